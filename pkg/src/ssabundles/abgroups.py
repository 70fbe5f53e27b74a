"""Finitely generated abelian groups with explicit bases.

A group is stored in invariant-factor form: a free rank plus a
divisibility chain d1 | d2 | ... of torsion orders.  Coordinates are
always ordered (torsion generators in chain order, then free
generators).  Groups that arise as cohomology carry generator
representatives in an ambient cochain space together with a projection,
so classes can be lifted to explicit cocycles and cocycles can be read
back into coordinates; the round trip project(lift(v)) == v holds.

Coefficient rings: Z, Z/2, and Z_P for a finite set of primes P.  Z_P
arithmetic is Z arithmetic followed by stripping the torsion that
becomes invertible (Z_P is a PID, and localisation is exact).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd, prod

from .snf import (
    F2Elimination,
    F2Matrix,
    SmithNormalForm,
    SparseIntMatrix,
    f2_kernel,
    f2_kernel_coords,
)


# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    kind: str                      # "Z" | "Z/2" | "Z_P"
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == "Z_P":
            ps = self.primes
            if not ps or list(ps) != sorted(set(ps)):
                raise ValueError("Z_P needs a nonempty sorted duplicate-free prime set")
            for p in ps:
                if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                    raise ValueError(f"{p} is not prime")
        elif self.primes:
            raise ValueError("primes only make sense for Z_P")

    def __str__(self):
        if self.kind == "Z_P":
            return "Z[1/%s]" % ",1/".join(str(p) for p in self.primes)
        return self.kind


INT = Ring("Z")
MOD2 = Ring("Z/2")


def localized_ring(primes) -> Ring:
    return Ring("Z_P", tuple(sorted(set(primes))))


def coprime_part(d: int, primes) -> int:
    """Largest divisor of d coprime to every p in primes."""
    for p in primes:
        while d % p == 0:
            d //= p
    return d


def primary_decomposition(factors):
    """Invariant factors -> {prime: [exponents descending]}."""
    out: dict[int, list[int]] = {}
    for d in factors:
        n, p = d, 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.setdefault(p, []).append(e)
            p += 1
        if n > 1:
            out.setdefault(n, []).append(1)
    for p in out:
        out[p].sort(reverse=True)
    return out

def invariant_factors_from_primary(primary) -> tuple[int, ...]:
    """Recombine prime-power exponent lists into a divisibility chain."""
    depth = max((len(v) for v in primary.values()), default=0)
    chain = []
    for i in range(depth):
        d = prod(p ** v[i] for p, v in primary.items() if len(v) > i)
        chain.append(d)
    chain.reverse()
    return tuple(d for d in chain if d > 1)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

class FgAbGroup:
    """Finitely generated abelian group (or Z_P-module, or Z/2-vector
    space) with optional lifting data."""

    def __init__(self, ring: Ring, free_rank: int, torsion, gen_reps=None, project=None):
        torsion = tuple(torsion)
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"not a divisibility chain: {torsion}")
        if any(d < 2 for d in torsion):
            raise ValueError("torsion orders must exceed 1")
        if ring.kind == "Z_P" and any(gcd(d, p) > 1 for d in torsion for p in ring.primes):
            raise ValueError("Z_P torsion must be coprime to P")
        self.ring = ring
        self.free_rank = free_rank
        self.torsion = torsion
        self.gen_reps = gen_reps
        self._project = project

    # -- shape ----------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def orders(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def size(self):
        """Group order, or None when infinite."""
        return None if self.free_rank else prod(self.torsion)

    def same_type(self, other: "FgAbGroup") -> bool:
        return (self.free_rank, self.torsion) == (other.free_rank, other.torsion)

    # -- element arithmetic ----------------------------------------------

    def reduce(self, coords) -> tuple[int, ...]:
        coords = list(coords)
        if len(coords) != self.ngens:
            raise ValueError("coordinate length mismatch")
        for i, d in enumerate(self.torsion):
            coords[i] %= d
        return tuple(coords)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def add(self, x, y):
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x):
        return self.reduce([-a for a in x])

    def scale(self, x, c):
        return self.reduce([c * a for a in x])

    def elements(self):
        """All elements; only for finite groups."""
        if self.free_rank:
            raise ValueError("infinite group")
        return (tuple(t) for t in iproduct(*(range(d) for d in self.torsion)))

    def element_order(self, x) -> int:
        x = self.reduce(x)
        o = 1
        for xi, d in zip(x, self.orders):
            if d == 0:
                if xi:
                    return 0
            elif xi:
                oi = d // gcd(xi, d)
                o = o * oi // gcd(o, oi)
        return o

    # -- lifting ----------------------------------------------------------

    def lift(self, coords):
        """Ambient representative of the class with the given coordinates."""
        if self.gen_reps is None:
            raise ValueError("group carries no representatives")
        coords = self.reduce(coords)
        if self.ring is MOD2 or self.ring.kind == "Z/2":
            out = 0
            for c, rep in zip(coords, self.gen_reps):
                if c & 1:
                    out ^= rep
            return out
        n = len(self.gen_reps[0]) if self.gen_reps else 0
        out = [0] * n
        for c, rep in zip(coords, self.gen_reps):
            if c:
                for i, v in enumerate(rep):
                    if v:
                        out[i] += c * v
        return out

    def project(self, ambient) -> tuple[int, ...]:
        if self._project is None:
            raise ValueError("group carries no projection")
        return self._project(ambient)

    # -- misc --------------------------------------------------------------

    def __repr__(self):
        return f"FgAbGroup({iso_type(self)!r})"


def trivial_group(ring: Ring = INT) -> FgAbGroup:
    return FgAbGroup(ring, 0, ())


def free_group(rank: int, ring: Ring = INT) -> FgAbGroup:
    return FgAbGroup(ring, rank, ())


def iso_type(G: FgAbGroup) -> str:
    """Canonical type string, e.g. "Z^2 + Z/2 + Z/4" or "Z_P^1 + Z/3 (P={2})"."""
    if G.is_trivial():
        return "0"
    parts = []
    if G.free_rank:
        if G.ring.kind == "Z_P":
            parts.append(f"Z_P^{G.free_rank}")
        elif G.free_rank == 1:
            parts.append("Z")
        else:
            parts.append(f"Z^{G.free_rank}")
    parts.extend(f"Z/{d}" for d in G.torsion)
    s = " + ".join(parts)
    if G.ring.kind == "Z_P":
        s += " (P={%s})" % ",".join(str(p) for p in G.ring.primes)
    return s


def direct_sum(groups, ring=None) -> FgAbGroup:
    """Abstract direct sum (no lifting data), normalised to a chain."""
    groups = list(groups)
    if ring is None:
        ring = groups[0].ring if groups else INT
    rank = sum(g.free_rank for g in groups)
    primary = primary_decomposition([d for g in groups for d in g.torsion])
    return FgAbGroup(ring, rank, invariant_factors_from_primary(primary))


# ---------------------------------------------------------------------------
# quotient presentations  Z^n / (lattice spanned by relation rows)
# ---------------------------------------------------------------------------

@dataclass
class Presentation:
    group: FgAbGroup
    genmat: SparseIntMatrix          # columns: new generators in old coordinates
    project: "object"                # old coordinate vector -> group coords


def quotient_presentation(n_gens: int, relation_rows, ring: Ring = INT) -> Presentation:
    """Present Z^n modulo the lattice spanned by the given relation rows."""
    rows = [list(r) for r in relation_rows]
    if ring.kind == "Z/2":
        rows += [[2 if i == j else 0 for i in range(n_gens)] for j in range(n_gens)]
    Rt = SparseIntMatrix(n_gens, len(rows))
    for jcol, r in enumerate(rows):
        if len(r) != n_gens:
            raise ValueError("relation length mismatch")
        for i, v in enumerate(r):
            if v:
                Rt.set(i, jcol, v)
    s = SmithNormalForm(Rt)
    diag = [s.D.get(i, i) for i in range(n_gens)]
    keep = []          # (old SNF slot, order) with order 0 meaning free
    for i, d in enumerate(diag):
        d = abs(d)
        if d == 1:
            continue
        keep.append((i, d))
    torsion_slots = [(i, d) for i, d in keep if d > 1]
    free_slots = [(i, 0) for i, d in keep if d == 0]
    slots = torsion_slots + free_slots
    torsion = tuple(d for _, d in torsion_slots)
    if ring.kind == "Z_P":
        # strip unit torsion; keep slot alignment for projection
        stripped = [(i, coprime_part(d, ring.primes)) for i, d in torsion_slots]
        torsion_slots = [(i, d) for i, d in stripped if d > 1]
        slots = torsion_slots + free_slots
        torsion = tuple(d for _, d in torsion_slots)
    if ring.kind == "Z/2":
        torsion = tuple(2 for _ in torsion_slots)

    genmat = SparseIntMatrix(n_gens, len(slots))
    for newj, (slot, _) in enumerate(slots):
        for i, v in s.Uinv.col_vector(slot).items():
            genmat.set(i, newj, v)
    U = s.U
    orders = tuple(d for _, d in torsion_slots) + (0,) * len(free_slots)
    slot_list = [slot for slot, _ in slots]

    def project(x):
        y = U.matvec(list(x))
        out = []
        for slot, d in zip(slot_list, orders):
            out.append(y[slot] % d if d else y[slot])
        return tuple(out)

    group = FgAbGroup(ring, len(free_slots), torsion)
    return Presentation(group, genmat, project)


def group_from_presentation(n_generators: int, relations, ring: Ring = INT) -> FgAbGroup:
    """Abstract isomorphism type of <g1..gn | relations> (rows of `relations`)."""
    if isinstance(relations, SparseIntMatrix):
        rows = relations.to_dense()
    else:
        rows = [list(r) for r in relations]
    for r in rows:
        if len(r) != n_generators:
            raise ValueError("relations must have n_generators columns")
    return quotient_presentation(n_generators, rows, ring).group


# ---------------------------------------------------------------------------
# cohomology of a cochain presentation
# ---------------------------------------------------------------------------

def homology_at(presentation, degree: int) -> FgAbGroup:
    """ker(delta^degree) / im(delta^(degree-1)) over the presentation's ring.

    The result carries generator representatives (cochain vectors over Z,
    or bitmasks over Z/2) plus a projection back to coordinates.
    """
    ring = presentation.ring
    dim_n = presentation.dim(degree)
    if dim_n == 0:
        return FgAbGroup(ring, 0, (), gen_reps=(), project=lambda v: ())
    B = presentation.matrix(degree)
    Bprev = presentation.matrix(degree - 1) if degree - 1 >= presentation.degrees[0] else None
    if ring.kind == "Z/2":
        return _homology_mod2(B, Bprev, dim_n)
    G = _homology_int(B, Bprev, dim_n, ring)
    return G


def _homology_int(B, Bprev, dim_n, ring) -> FgAbGroup:
    s = SmithNormalForm(B)
    kbasis = s.kernel_basis()
    k = len(kbasis)
    rel_rows = []
    if Bprev is not None:
        for j in range(Bprev.ncols):
            col = [0] * dim_n
            for i, v in Bprev.col_vector(j).items():
                col[i] = v
            if any(col):
                rel_rows.append(s.kernel_coords(col))
    pres = quotient_presentation(k, rel_rows, ring)
    reps = []
    for j in range(pres.group.ngens):
        g = pres.genmat.col_vector(j)
        vec = [0] * dim_n
        for kk, c in g.items():
            if c:
                for i, v in enumerate(kbasis[kk]):
                    if v:
                        vec[i] += c * v
        reps.append(tuple(vec))

    def project(z):
        return pres.project(s.kernel_coords(list(z)))

    return FgAbGroup(ring, pres.group.free_rank, pres.group.torsion,
                     gen_reps=tuple(reps), project=project)


def _homology_mod2(B, Bprev, dim_n) -> FgAbGroup:
    B2 = F2Matrix.from_int_matrix(B)
    B2.ncols = dim_n
    kbasis, free_cols = f2_kernel(B2)
    rows = []
    if Bprev is not None:
        for j in range(Bprev.ncols):
            colmask = 0
            for i, v in Bprev.col_vector(j).items():
                if v & 1:
                    colmask |= 1 << i
            if colmask:
                rows.append(f2_kernel_coords(colmask, free_cols))
    elim = F2Elimination(F2Matrix(len(rows), len(kbasis), rows))
    gen_slots = elim.free_cols
    reps = tuple(kbasis[j] for j in gen_slots)

    def project(zmask):
        kc = f2_kernel_coords(zmask, free_cols)
        red = elim.reduce_vector(kc)
        return tuple((red >> j) & 1 for j in gen_slots)

    return FgAbGroup(MOD2, 0, (2,) * len(gen_slots), gen_reps=reps, project=project)


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

class GroupHom:
    """Hom of f.g. abelian groups in the chosen coordinates.

    matrix[i][j] = coefficient of target generator i in the image of
    source generator j.
    """

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix):
        self.source = source
        self.target = target
        self.matrix = [list(r) for r in matrix]
        if len(self.matrix) != target.ngens or any(len(r) != source.ngens for r in self.matrix):
            raise ValueError("hom matrix shape mismatch")

    @classmethod
    def zero(cls, source, target) -> "GroupHom":
        return cls(source, target, [[0] * source.ngens for _ in range(target.ngens)])

    @classmethod
    def identity(cls, G) -> "GroupHom":
        return cls(G, G, [[1 if i == j else 0 for j in range(G.ngens)] for i in range(G.ngens)])

    @classmethod
    def on_generators(cls, source, target, images, check: bool = True) -> "GroupHom":
        """Build from the list of images (target coords) of source generators."""
        mat = [[0] * source.ngens for _ in range(target.ngens)]
        for j, img in enumerate(images):
            img = target.reduce(img)
            for i, v in enumerate(img):
                mat[i][j] = v
        h = cls(source, target, mat)
        if check and not h.respects_torsion():
            raise ValueError("images do not respect generator orders")
        return h

    def apply(self, coords):
        coords = list(coords)
        out = [sum(row[j] * coords[j] for j in range(len(coords))) for row in self.matrix]
        return self.target.reduce(out)

    def respects_torsion(self) -> bool:
        for j, d in enumerate(self.source.orders):
            if d == 0:
                continue
            img = self.apply([d if jj == j else 0 for jj in range(self.source.ngens)])
            if any(img):
                return False
        return True

    def is_zero(self) -> bool:
        for j in range(self.source.ngens):
            e = [1 if jj == j else 0 for jj in range(self.source.ngens)]
            if any(self.apply(e)):
                return False
        return True

    def compose(self, inner: "GroupHom") -> "GroupHom":
        if inner.target.orders != self.source.orders:
            raise ValueError("hom composition mismatch")
        images = []
        for j in range(inner.source.ngens):
            e = [1 if jj == j else 0 for jj in range(inner.source.ngens)]
            images.append(self.apply(inner.apply(e)))
        return GroupHom.on_generators(inner.source, self.target, images, check=False)

    def __repr__(self):
        return f"GroupHom({iso_type(self.source)} -> {iso_type(self.target)})"


def induced_hom(source: FgAbGroup, target: FgAbGroup, cochain_map: SparseIntMatrix,
                source_coboundaries=None) -> GroupHom:
    """Hom induced by a cochain-level map (integral coefficients).

    Checks on generators that cocycles map to cocycles (their images
    project consistently) and, when the source coboundary columns are
    supplied, that coboundaries map to zero classes.
    """
    images = []
    for rep in source.gen_reps:
        img = cochain_map.matvec(list(rep))
        images.append(target.project(img))
    if source_coboundaries is not None:
        for col in source_coboundaries:
            img = cochain_map.matvec(list(col))
            if any(target.project(img)):
                raise ValueError("cochain map does not send coboundaries to coboundaries")
    return GroupHom.on_generators(source, target, images)


# ---------------------------------------------------------------------------
# kernels and cokernels
# ---------------------------------------------------------------------------

@dataclass
class Subgroup:
    group: FgAbGroup
    embed: SparseIntMatrix           # columns: subgroup generators in ambient coords
    _express: "object" = field(default=None, repr=False)

    def embed_coords(self, coords):
        vec = self.embed.matvec(list(coords))
        return vec

    def express(self, ambient_coords):
        """Coordinates in the subgroup of an ambient element known to lie in it."""
        return self._express(ambient_coords)


def _relation_columns(G: FgAbGroup) -> list[list[int]]:
    cols = []
    for i, d in enumerate(G.torsion):
        col = [0] * G.ngens
        col[i] = d
        cols.append(col)
    return cols


def kernel(h: GroupHom) -> Subgroup:
    """Kernel of h with embedding and expression data."""
    s, t = h.source, h.target
    rel_t = _relation_columns(t)
    M1 = SparseIntMatrix(t.ngens, s.ngens + len(rel_t))
    for i in range(t.ngens):
        for j in range(s.ngens):
            if h.matrix[i][j]:
                M1.set(i, j, h.matrix[i][j])
    for jj, col in enumerate(rel_t):
        for i, v in enumerate(col):
            if v:
                M1.set(i, s.ngens + jj, v)
    xs = [vec[: s.ngens] for vec in SmithNormalForm(M1).kernel_basis()]
    xs = [x for x in xs if any(x)]
    k = len(xs)
    Xmat = SparseIntMatrix(s.ngens, k)
    for j, x in enumerate(xs):
        for i, v in enumerate(x):
            if v:
                Xmat.set(i, j, v)
    rel_s = _relation_columns(s)
    N = SparseIntMatrix(s.ngens, k + len(rel_s))
    for i, j, v in Xmat.entries():
        N.set(i, j, v)
    for jj, col in enumerate(rel_s):
        for i, v in enumerate(col):
            if v:
                N.set(i, k + jj, v)
    snf_N = SmithNormalForm(N)
    relations = [vec[:k] for vec in snf_N.kernel_basis()]
    pres = quotient_presentation(k, relations, s.ring)
    embed = Xmat.matmul(pres.genmat)

    def express(ambient):
        sol = snf_N.solve(list(ambient))
        if sol is None:
            raise ValueError("element is not in the kernel")
        return pres.group.reduce(pres.project(sol[:k]))

    return Subgroup(pres.group, embed, express)


@dataclass
class Quotient:
    group: FgAbGroup
    project: "object"


def cokernel(h: GroupHom) -> Quotient:
    t = h.target
    rels = []
    for j in range(h.source.ngens):
        rels.append([h.matrix[i][j] for i in range(t.ngens)])
    for i, d in enumerate(t.torsion):
        row = [0] * t.ngens
        row[i] = d
        rels.append(row)
    pres = quotient_presentation(t.ngens, rels, t.ring)
    return Quotient(pres.group, pres.project)


def subquotient(h_in: GroupHom, h_out: GroupHom) -> FgAbGroup:
    """ker(h_out) / im(h_in) for a two-step complex (h_out . h_in = 0)."""
    K = kernel(h_out)
    mid = h_out.source
    images = []
    for j in range(h_in.source.ngens):
        e = [1 if jj == j else 0 for jj in range(h_in.source.ngens)]
        img = h_in.apply(e)
        images.append(K.express(img))
    rels = list(images) + [list(r) for r in _relation_rows_of(K.group)]
    return group_from_presentation(K.group.ngens, rels, mid.ring)


def _relation_rows_of(G: FgAbGroup):
    rows = []
    for i, d in enumerate(G.torsion):
        row = [0] * G.ngens
        row[i] = d
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# localisation
# ---------------------------------------------------------------------------

@dataclass
class LocalizedGroup:
    group: FgAbGroup
    coeff_map: "object"             # coords over Z -> coords over Z_P


def localize(G: FgAbGroup, primes) -> FgAbGroup:
    return localize_with_map(G, primes).group


def localize_with_map(G: FgAbGroup, primes) -> LocalizedGroup:
    """Tensor with Z_P: free rank survives, torsion loses its P-part.

    Also returns the coordinate form of the natural map G -> G (x) Z_P.
    """
    if G.ring != INT:
        raise ValueError("localize expects a group over Z")
    ring = localized_ring(primes)
    surviving = []                  # (old index, new order)
    for i, d in enumerate(G.torsion):
        d2 = coprime_part(d, ring.primes)
        if d2 > 1:
            surviving.append((i, d2))
    torsion = tuple(d for _, d in surviving)
    old_free = list(range(len(G.torsion), G.ngens))
    reps = None
    if G.gen_reps is not None:
        reps = tuple(G.gen_reps[i] for i, _ in surviving) + tuple(G.gen_reps[i] for i in old_free)

    def coeff_map(coords):
        coords = G.reduce(coords)
        out = [coords[i] % d for i, d in surviving]
        out.extend(coords[i] for i in old_free)
        return tuple(out)

    project = None
    if G._project is not None:
        base = G.project
        project = lambda v: coeff_map(base(v))
    H = FgAbGroup(ring, G.free_rank, torsion, gen_reps=reps, project=project)
    return LocalizedGroup(H, coeff_map)


def coefficient_hom(G: FgAbGroup, primes) -> tuple[FgAbGroup, GroupHom]:
    """The natural hom G -> G (x) Z_P as a GroupHom."""
    loc = localize_with_map(G, primes)
    images = [loc.coeff_map([1 if jj == j else 0 for jj in range(G.ngens)])
              for j in range(G.ngens)]
    return loc.group, GroupHom.on_generators(G, loc.group, images, check=False)
