"""Cohomology groups and cochain-level operations on ordered complexes.

Representatives are sparse cochains (simplex tuple -> coefficient).
Relative classes are cochains vanishing on the subcomplex; every formula
here preserves that support condition, so the absolute and relative
cases share code.

The cup-i products use Steenrod's combinatorial formula with respect to
the global vertex order: an (p+q-i)-simplex is cut at i+1 positions into
overlapping blocks, even blocks feeding the first factor and odd blocks
the second.  Sq^2 of a degree-n class x is the class of x cup_{n-2} x,
the Bockstein is computed by lifting a mod-2 cocycle to integers, taking
its coboundary and halving, and the integral Sq^3 is the composite
(Bockstein) . Sq^2 . (mod-2 reduction) -- the first differential of the
Atiyah-Hirzebruch spectral sequence for complex K-theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .abgroups import (
    INT,
    MOD2,
    FgAbGroup,
    Ring,
    homology_at,
    localize_with_map,
    localized_ring,
    trivial_group,
)
from .complexes import (
    CochainComplexPresentation,
    SimplicialComplex,
    relative_cochain_complex,
)


# ---------------------------------------------------------------------------
# cached groups and presentations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cochain_presentation(X: SimplicialComplex, A: SimplicialComplex | None,
                         ring: Ring = INT) -> CochainComplexPresentation:
    return relative_cochain_complex(X, A, ring)


@lru_cache(maxsize=None)
def cohomology(X: SimplicialComplex, A: SimplicialComplex | None, n: int,
               ring: Ring = INT) -> FgAbGroup:
    """H^n(X, A; ring) with representatives and projection data."""
    if n < 0 or n > X.dimension:
        return FgAbGroup(ring, 0, (), gen_reps=(), project=lambda v: ())
    if ring.kind == "Z_P":
        base = cohomology(X, A, n, INT)
        return localize_with_map(base, ring.primes).group
    return homology_at(cochain_presentation(X, A, ring), n)


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------

@dataclass
class CohomClass:
    """An element of H^degree(X, A; ring): coordinates plus a cocycle."""

    X: SimplicialComplex
    A: SimplicialComplex | None
    ring: Ring
    degree: int
    coords: tuple[int, ...]
    rep: dict          # simplex tuple -> coefficient

    @property
    def group(self) -> FgAbGroup:
        return cohomology(self.X, self.A, self.degree, self.ring)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def same_context(self, other: "CohomClass") -> bool:
        return (self.X, self.A, self.ring, self.degree) == \
            (other.X, other.A, other.ring, other.degree)


def _rep_to_vec(X, A, n, rep, mod2: bool):
    basis = cochain_presentation(X, A, INT).basis(n)
    if mod2:
        mask = 0
        for i, s in enumerate(basis):
            if rep.get(s, 0) & 1:
                mask |= 1 << i
        return mask
    index = {s: i for i, s in enumerate(basis)}
    vec = [0] * len(basis)
    for s, v in rep.items():
        if v:
            vec[index[s]] = v
    return vec


def _vec_to_rep(X, A, n, vec, mod2: bool):
    basis = cochain_presentation(X, A, INT).basis(n)
    if mod2:
        return {s: 1 for i, s in enumerate(basis) if (vec >> i) & 1}
    return {s: v for s, v in zip(basis, vec) if v}


def _project_rep(X, A, n, ring, rep):
    G = cohomology(X, A, n, ring)
    if G.is_trivial():
        return ()
    return G.project(_rep_to_vec(X, A, n, rep, ring.kind == "Z/2"))


def _class_from_rep(X, A, n, ring, rep) -> CohomClass:
    rep = {s: v for s, v in rep.items() if (v & 1 if ring.kind == "Z/2" else v)}
    if ring.kind == "Z/2":
        rep = {s: 1 for s in rep}
    return CohomClass(X, A, ring, n, tuple(_project_rep(X, A, n, ring, rep)), rep)


def zero_class(X, A, n, ring) -> CohomClass:
    G = cohomology(X, A, n, ring)
    return CohomClass(X, A, ring, n, G.zero(), {})


def class_from_coords(X, A, n, ring, coords) -> CohomClass:
    G = cohomology(X, A, n, ring)
    coords = G.reduce(coords)
    if G.is_trivial() or not any(coords):
        return CohomClass(X, A, ring, n, coords, {})
    vec = G.lift(coords)
    return CohomClass(X, A, ring, n, coords, _vec_to_rep(X, A, n, vec, ring.kind == "Z/2"))


def generator_classes(X, A, n, ring) -> list[CohomClass]:
    G = cohomology(X, A, n, ring)
    out = []
    for j in range(G.ngens):
        coords = [1 if jj == j else 0 for jj in range(G.ngens)]
        out.append(class_from_coords(X, A, n, ring, coords))
    return out


def add_classes(x: CohomClass, y: CohomClass) -> CohomClass:
    if not x.same_context(y):
        raise ValueError("mismatched classes")
    rep = dict(x.rep)
    for s, v in y.rep.items():
        rep[s] = rep.get(s, 0) + v
    return _class_from_rep(x.X, x.A, x.degree, x.ring, rep)


def neg_class(x: CohomClass) -> CohomClass:
    return _class_from_rep(x.X, x.A, x.degree, x.ring,
                           {s: -v for s, v in x.rep.items()})


def is_cocycle(x: CohomClass) -> bool:
    pres = cochain_presentation(x.X, x.A, INT)
    if x.degree > x.X.dimension:
        return True
    vec = _rep_to_vec(x.X, x.A, x.degree, x.rep, False)
    out = pres.matrix(x.degree).matvec(vec)
    mod = 2 if x.ring.kind == "Z/2" else 0
    return all(v % mod == 0 for v in out) if mod else not any(out)


def restrict_class(x: CohomClass, B: SimplicialComplex) -> CohomClass:
    """Pullback along the inclusion of a subcomplex (absolute classes)."""
    if not x.X.has_subcomplex(B):
        raise ValueError("not a subcomplex")
    rep = {s: v for s, v in x.rep.items() if s in B.simplices}
    return _class_from_rep(B, None, x.degree, x.ring, rep)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def cup(x: CohomClass, y: CohomClass) -> CohomClass:
    """Front-face/back-face cup product on representatives."""
    if x.X is not y.X and x.X != y.X:
        raise ValueError("cup needs classes on the same space")
    if x.ring != y.ring:
        raise ValueError("cup needs matching coefficient rings")
    A = x.A if x.A is not None else y.A
    p, q = x.degree, y.degree
    n = p + q
    if n > x.X.dimension:
        return zero_class(x.X, A, n, x.ring)
    rep = {}
    for sigma in cochain_presentation(x.X, A, INT).basis(n):
        xv = x.rep.get(sigma[: p + 1], 0)
        if not xv:
            continue
        yv = y.rep.get(sigma[p:], 0)
        if yv:
            rep[sigma] = xv * yv
    return _class_from_rep(x.X, A, n, x.ring, rep)


def cup_i_cochain(X, A, xrep: dict, yrep: dict, p: int, q: int, i: int) -> dict:
    """Steenrod's cup-i product of mod-2 cochains, as a raw cochain."""
    if i < 0:
        return {}
    m = p + q - i
    if m < 0 or m > X.dimension:
        return {}
    out = {}
    for sigma in cochain_presentation(X, A, INT).basis(m):
        total = 0
        for ns in combinations(range(m + 1), i + 1):
            even_pos: list[int] = []
            odd_pos: list[int] = []
            prev = 0
            for j in range(i + 2):
                end = ns[j] if j <= i else m
                dest = even_pos if j % 2 == 0 else odd_pos
                dest.extend(range(prev, end + 1))
                prev = end
            if len(even_pos) != p + 1 or len(odd_pos) != q + 1:
                continue
            xv = xrep.get(tuple(sigma[t] for t in even_pos), 0)
            if not (xv & 1):
                continue
            yv = yrep.get(tuple(sigma[t] for t in odd_pos), 0)
            total ^= yv & 1
        if total:
            out[sigma] = 1
    return out


def cup_i(x: CohomClass, y: CohomClass, i: int) -> dict:
    """The cup-i cochain of two mod-2 classes (not projected to a class)."""
    if x.ring.kind != "Z/2" or y.ring.kind != "Z/2":
        raise ValueError("cup_i is defined for mod-2 coefficients")
    if i > min(x.degree, y.degree):
        raise ValueError("cup_i needs i <= min(deg x, deg y)")
    A = x.A if x.A is not None else y.A
    return cup_i_cochain(x.X, A, x.rep, y.rep, x.degree, y.degree, i)


# ---------------------------------------------------------------------------
# Steenrod and Bockstein operations
# ---------------------------------------------------------------------------

def sq2(x: CohomClass) -> CohomClass:
    """Sq^2: class of x cup_{n-2} x; zero below degree 2."""
    if x.ring.kind != "Z/2":
        raise ValueError("sq2 expects a mod-2 class")
    n = x.degree
    if n < 2 or n + 2 > x.X.dimension:
        return zero_class(x.X, x.A, n + 2, MOD2)
    rep = cup_i_cochain(x.X, x.A, x.rep, x.rep, n, n, n - 2)
    return _class_from_rep(x.X, x.A, n + 2, MOD2, rep)


def sq1(x: CohomClass) -> CohomClass:
    """Sq^1: class of x cup_{n-1} x (equals the mod-2 Bockstein)."""
    if x.ring.kind != "Z/2":
        raise ValueError("sq1 expects a mod-2 class")
    n = x.degree
    if n + 1 > x.X.dimension:
        return zero_class(x.X, x.A, n + 1, MOD2)
    rep = cup_i_cochain(x.X, x.A, x.rep, x.rep, n, n, n - 1)
    return _class_from_rep(x.X, x.A, n + 1, MOD2, rep)


def bockstein(x: CohomClass) -> CohomClass:
    """Connecting map of 0 -> Z -> Z -> Z/2 -> 0 at the cochain level:
    lift to an integer cochain, apply the coboundary, divide by 2."""
    if x.ring.kind != "Z/2":
        raise ValueError("bockstein expects a mod-2 class")
    n = x.degree
    if n + 1 > x.X.dimension:
        return zero_class(x.X, x.A, n + 1, INT)
    pres = cochain_presentation(x.X, x.A, INT)
    vec = _rep_to_vec(x.X, x.A, n, x.rep, False)
    out = pres.matrix(n).matvec(vec)
    for v in out:
        if v % 2:
            raise AssertionError("coboundary of a mod-2 cocycle lift must be even")
    half = [v // 2 for v in out]
    return _class_from_rep(x.X, x.A, n + 1, INT,
                           _vec_to_rep(x.X, x.A, n + 1, half, False))


def reduce_mod2(x: CohomClass) -> CohomClass:
    if x.ring != INT:
        raise ValueError("reduce_mod2 expects an integral class")
    return _class_from_rep(x.X, x.A, x.degree, MOD2,
                           {s: v & 1 for s, v in x.rep.items()})


def coefficient_map_class(x: CohomClass, primes) -> CohomClass:
    """The map H^n(-;Z) -> H^n(-;Z_P) on an explicit class."""
    if x.ring != INT:
        raise ValueError("coefficient map expects an integral class")
    ring = localized_ring(primes)
    base = cohomology(x.X, x.A, x.degree, INT)
    loc = localize_with_map(base, ring.primes)
    return CohomClass(x.X, x.A, ring, x.degree,
                      tuple(loc.coeff_map(x.coords)), dict(x.rep))


def beta_P(x: CohomClass, primes) -> CohomClass:
    """Theorem-A twist ingredient: Bockstein followed by Z -> Z_P."""
    return coefficient_map_class(bockstein(x), primes)


def sq3_integral(x: CohomClass) -> CohomClass:
    """beta . Sq^2 . rho, the first K-theory differential, degree +3."""
    if x.ring != INT:
        raise ValueError("sq3_integral expects an integral class")
    if x.degree <= 1:
        return zero_class(x.X, x.A, x.degree + 3, INT)
    return bockstein(sq2(reduce_mod2(x)))
