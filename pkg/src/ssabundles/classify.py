"""Classification groups of bundles with strongly self-absorbing fibres.

For a space X and an algebra D among C, the Jiang-Su algebra Z, a UHF
algebra M_P, O_infinity, and M_P (x) O_infinity, this assembles the
classification group out of four named summands,

    u     H^1(X, (Z_P)+^x)          free of rank (rank H_1) * |P|
    w     H^1(X, Z/2)
    tau   H^3(X, Z or Z_P)
    kappa k^5(X, Z or Z_P)

with the twisted multiplication

    (w, tau) * (w', tau') = (w + w', tau + tau' + c(w, w'))

where c(w, w') is the Bockstein of the mod-2 cup product, pushed into
the tau coefficients.  Which summands appear depends on the algebra and
on the variant: "plain" is the full automorphism group, "bar" restricts
to its identity component (dropping u and w), and "hat" is the graded
variant (adding w to the stably finite kinds).  Purely infinite kinds
carry w already in the plain variant; their hat variant coincides with
it.  O_2 is rejected: the classification theorem does not cover it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import prod

from .abgroups import (
    FgAbGroup,
    INT,
    MOD2,
    free_group,
    group_from_presentation,
    iso_type,
    localized_ring,
    localize_with_map,
)
from .cohomology import (
    beta_P,
    bockstein,
    cohomology,
    cup,
    generator_classes,
)
from .complexes import SimplicialComplex
from .ktheory import (
    APPROXIMATE,
    EXACT,
    UP_TO_EXTENSION,
    KGroupReport,
    k5,
    localize_ahss,
)
from .models import AlgebraicModel

STABLY_FINITE = ("C", "Z", "M_P")
PURELY_INFINITE = ("Oinf", "M_P_Oinf")
VARIANTS = ("plain", "bar", "hat")


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str                       # C | Z | M_P | Oinf | M_P_Oinf
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in STABLY_FINITE + PURELY_INFINITE:
            raise UnsupportedAlgebra(f"unknown algebra kind {self.kind!r}")
        if self.kind in ("M_P", "M_P_Oinf"):
            if not self.primes:
                raise UnsupportedAlgebra(
                    "UHF algebras need a finite nonempty prime set; infinite "
                    "prime sets are not accepted ((Z_P)+^x would have infinite rank)")
            localized_ring(self.primes)
        elif self.primes:
            raise UnsupportedAlgebra("primes only apply to UHF kinds")

    @property
    def localized(self) -> bool:
        return self.kind in ("M_P", "M_P_Oinf")

    @property
    def purely_infinite(self) -> bool:
        return self.kind in PURELY_INFINITE

    def __str__(self):
        ps = "{%s}" % ",".join(str(p) for p in self.primes) if self.primes else ""
        return {"C": "C", "Z": "Z", "M_P": f"M{ps}",
                "Oinf": "Oinf", "M_P_Oinf": f"M{ps}xOinf"}[self.kind]


class UnsupportedAlgebra(ValueError):
    pass


_ALGEBRA_RE = re.compile(r"^M\{(\d+(?:,\d+)*)\}(xOinf)?$")


def parse_algebra(text: str) -> AlgebraSpec:
    text = text.strip()
    if text == "C":
        return AlgebraSpec("C")
    if text == "Z":
        return AlgebraSpec("Z")
    if text == "Oinf":
        return AlgebraSpec("Oinf")
    if text == "O2":
        raise UnsupportedAlgebra("O2 is not covered by Theorem A")
    m = _ALGEBRA_RE.match(text)
    if m:
        primes = tuple(sorted({int(p) for p in m.group(1).split(",")}))
        return AlgebraSpec("M_P_Oinf" if m.group(2) else "M_P", primes)
    if text in ("Q", "QxOinf", "M{all}"):
        raise UnsupportedAlgebra(
            "infinite prime sets are not accepted: (Z_P)+^x = sum of Z over p in P "
            "would have infinite rank")
    raise UnsupportedAlgebra(f"cannot parse algebra {text!r}")


# ---------------------------------------------------------------------------
# uniform space accessors (triangulation or algebraic model)
# ---------------------------------------------------------------------------

def _h_mod2(space, n) -> FgAbGroup:
    if isinstance(space, AlgebraicModel):
        return space.h_mod2(n)
    return cohomology(space, None, n, MOD2)


def _h_int(space, n) -> FgAbGroup:
    if isinstance(space, AlgebraicModel):
        return space.h_int(n)
    return cohomology(space, None, n, INT)


def _tau_group(space, primes) -> FgAbGroup:
    if primes:
        if isinstance(space, AlgebraicModel):
            return space.h_localized(3, primes)
        return cohomology(space, None, 3, localized_ring(primes))
    return _h_int(space, 3)


def _twist_int_coords(space, i, j):
    """Coordinates in H^3(X;Z) of beta(b_i cup b_j) for the mod-2 degree-1
    basis classes b_i, b_j."""
    if isinstance(space, AlgebraicModel):
        w2 = space.cup_mod2(1, 1, i, j)
        return space.beta_hom(2).apply(w2)
    gens = generator_classes(space, None, 1, MOD2)
    return bockstein(cup(gens[i], gens[j])).coords


def units_H1(space, primes) -> FgAbGroup:
    """H^1(X, (Z_P)+^x): free on (H_1 generator, p) pairs."""
    ring = localized_ring(primes)
    r = _h_int(space, 1).free_rank
    return free_group(r * len(ring.primes))


# ---------------------------------------------------------------------------
# the classification group
# ---------------------------------------------------------------------------

@dataclass
class ClassGroup:
    space: object
    algebra: AlgebraSpec
    variant: str
    components: dict                     # name -> FgAbGroup, in u,w,tau,kappa order
    twist_table: dict | None             # (i, j) -> tau coords
    kappa_report: KGroupReport | None
    kappa_candidates: tuple | None = None
    partial: bool = False

    @property
    def twisted(self) -> bool:
        return self.twist_table is not None

    def component_names(self):
        return list(self.components)

    def is_finite(self) -> bool:
        return all(g.free_rank == 0 for g in self.components.values())

    def order(self):
        return None if not self.is_finite() else prod(
            g.size() for g in self.components.values())

    def zero(self) -> "BundleClass":
        return BundleClass(self, {n: g.zero() for n, g in self.components.items()})

    def element(self, coords: dict) -> "BundleClass":
        comps = {}
        for name, g in self.components.items():
            comps[name] = g.reduce(coords.get(name, g.zero()))
        return BundleClass(self, comps)

    def elements(self):
        names = list(self.components)
        pools = [list(self.components[n].elements()) for n in names]
        for combo in iproduct(*pools):
            yield BundleClass(self, dict(zip(names, combo)))


@dataclass
class BundleClass:
    group: ClassGroup
    components: dict                    # name -> coordinate tuple

    def __eq__(self, other):
        return isinstance(other, BundleClass) and self.group is other.group \
            and self.components == other.components

    def __hash__(self):
        return hash(tuple(sorted((k, tuple(v)) for k, v in self.components.items())))

    def to_dict(self):
        return {k: list(v) for k, v in self.components.items()}


def _component_layout(algebra: AlgebraSpec, variant: str):
    """Which of u, w, tau, kappa appear for (algebra, variant)."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    kind = algebra.kind
    u = kind in ("M_P", "M_P_Oinf") and variant in ("plain", "hat")
    if kind in PURELY_INFINITE:
        w = variant in ("plain", "hat")
    else:
        w = variant == "hat"
    kappa = kind != "C"
    return u, w, kappa


def classification_group(space, algebra: AlgebraSpec, variant: str = "plain") -> ClassGroup:
    """Assemble the classification group for (X, D) in the given variant."""
    has_u, has_w, has_kappa = _component_layout(algebra, variant)
    primes = algebra.primes if algebra.localized else ()
    components: dict[str, FgAbGroup] = {}
    if has_u:
        components["u"] = units_H1(space, primes)
    if has_w:
        components["w"] = _h_mod2(space, 1)
    tau = _tau_group(space, primes)
    components["tau"] = tau

    kappa_report = None
    kappa_candidates = None
    partial = False
    if has_kappa:
        kappa_report = k5(space)
        res = kappa_report.result
        if primes:
            res = localize_ahss(res, primes)
            kappa_report = KGroupReport(5, kappa_report.result, (tuple(primes), res))
        if res.status == EXACT:
            components["kappa"] = res.assembled
        elif res.status == UP_TO_EXTENSION:
            components["kappa"] = res.candidates[0]
            kappa_candidates = res.candidates
        else:
            components["kappa"] = res.piece_sum()
            partial = True

    twist_table = None
    if has_w:
        w_group = components["w"]
        h3int = _h_int(space, 3)
        if primes:
            coeff = localize_with_map(h3int, primes).coeff_map
        else:
            coeff = lambda c: tau.reduce(c)
        twist_table = {}
        for i in range(w_group.ngens):
            for j in range(i, w_group.ngens):
                val = tau.reduce(coeff(_twist_int_coords(space, i, j)))
                twist_table[(i, j)] = val
                twist_table[(j, i)] = val
    return ClassGroup(space, algebra, variant, components, twist_table,
                      kappa_report, kappa_candidates, partial)


# ---------------------------------------------------------------------------
# element arithmetic (the twisted group law)
# ---------------------------------------------------------------------------

def _twist_value(G: ClassGroup, wx, wy):
    tau = G.components["tau"]
    acc = tau.zero()
    for i, a in enumerate(wx):
        if a % 2 == 0:
            continue
        for j, b in enumerate(wy):
            if b % 2 == 0:
                continue
            acc = tau.add(acc, G.twist_table[(i, j)])
    return acc


def multiply(G: ClassGroup, x: BundleClass, y: BundleClass) -> BundleClass:
    if x.group is not G or y.group is not G:
        raise ValueError("elements belong to a different group")
    if G.partial:
        raise ValueError("group arithmetic is disabled on a partial (approximate kappa) group")
    comps = {name: g.add(x.components[name], y.components[name])
             for name, g in G.components.items()}
    if G.twisted:
        tw = _twist_value(G, x.components["w"], y.components["w"])
        comps["tau"] = G.components["tau"].add(comps["tau"], tw)
    return BundleClass(G, comps)


def inverse(G: ClassGroup, x: BundleClass) -> BundleClass:
    if x.group is not G:
        raise ValueError("element belongs to a different group")
    if G.partial:
        raise ValueError("group arithmetic is disabled on a partial (approximate kappa) group")
    comps = {name: g.neg(x.components[name]) for name, g in G.components.items()}
    if G.twisted:
        w = x.components["w"]
        cww = _twist_value(G, w, w)
        comps["tau"] = G.components["tau"].add(comps["tau"],
                                               G.components["tau"].neg(cww))
    return BundleClass(G, comps)


def delta0_grading(G: ClassGroup, x: BundleClass):
    """Projection onto the w summand (the Z/2 grading invariant)."""
    if "w" not in G.components:
        raise ValueError("this group has no w summand")
    return x.components["w"]


def delta0_dimension(G: ClassGroup, x: BundleClass):
    """Projection onto the u summand (the K_0-cocycle invariant)."""
    if "u" not in G.components:
        raise ValueError("this group has no u summand")
    return x.components["u"]


def abstract_iso_type(G: ClassGroup) -> FgAbGroup:
    """Isomorphism type of the group, from the presentation with one
    generator per summand basis element and the relations
    2 g_w = c(w, w) in tau coordinates.

    For UHF kinds the free rank mixes the genuinely free u part with the
    Z_P-module ranks of tau and kappa; the per-component breakdown keeps
    them apart.
    """
    if G.partial:
        raise ValueError("no abstract type for a partial group")
    names = list(G.components)
    offsets = {}
    total = 0
    for n in names:
        offsets[n] = total
        total += G.components[n].ngens
    rels = []
    for n in names:
        g = G.components[n]
        for i, d in enumerate(g.torsion):
            if n == "w":
                continue
            row = [0] * total
            row[offsets[n] + i] = d
            rels.append(row)
    if G.twisted:
        tau = G.components["tau"]
        for i in range(G.components["w"].ngens):
            row = [0] * total
            row[offsets["w"] + i] = 2
            cww = _twist_value(G, _unit(G.components["w"], i), _unit(G.components["w"], i))
            for t, v in enumerate(cww):
                row[offsets["tau"] + t] -= v
            rels.append(row)
    elif "w" in G.components:
        for i in range(G.components["w"].ngens):
            row = [0] * total
            row[offsets["w"] + i] = 2
            rels.append(row)
    ring = localized_ring(G.algebra.primes) if G.algebra.localized else INT
    return group_from_presentation(total, rels, ring)


def _unit(g: FgAbGroup, i: int):
    return tuple(1 if j == i else 0 for j in range(g.ngens))


def abstract_iso_candidates(G: ClassGroup) -> list[str]:
    """Iso type strings; two entries when kappa is only known up to
    extension (direct-sum and maximal-stacking candidates)."""
    if G.kappa_candidates is None:
        return [iso_type(abstract_iso_type(G))]
    out = []
    for cand in G.kappa_candidates:
        H = ClassGroup(G.space, G.algebra, G.variant,
                       {**G.components, "kappa": cand}, G.twist_table, G.kappa_report)
        out.append(iso_type(abstract_iso_type(H)))
    return out


# ---------------------------------------------------------------------------
# coefficients of the theories
# ---------------------------------------------------------------------------

def _zp_str(primes) -> str:
    return "Z[1/%d]" % prod(primes)


def coefficients(algebra: AlgebraSpec, i: int) -> str:
    """E_D^{-i}(point): positive units of K_0(D) at i = 0, K_0(D) at even
    i > 0, zero at odd i."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if i % 2:
        return "0"
    if i == 0:
        if algebra.kind in ("C", "Z"):
            return "0"
        if algebra.kind == "M_P":
            k = len(algebra.primes)
            return "Z" if k == 1 else f"Z^{k}"
        if algebra.kind == "Oinf":
            return "Z/2"
        k = len(algebra.primes)
        return "Z/2 + Z" if k == 1 else f"Z/2 + Z^{k}"
    if algebra.localized:
        return _zp_str(algebra.primes)
    return "Z"
