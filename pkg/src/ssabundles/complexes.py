"""Finite ordered simplicial complexes and their cochain complexes.

A complex stores every face explicitly, with simplices written as
strictly increasing vertex tuples.  The vertex order is the integer
order on vertex labels; all cup-i formulas downstream depend on it.
Everything is immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .abgroups import INT, Ring
from .snf import SparseIntMatrix


class SimplicialComplex:
    """Face-closed finite simplicial complex on vertices 0..vertex_count-1."""

    def __init__(self, simplices, vertex_count=None, name=None):
        closed: set[tuple[int, ...]] = set()
        for s in simplices:
            s = tuple(s)
            if not s:
                raise ValueError("empty simplex")
            if any(a >= b for a, b in zip(s, s[1:])):
                raise ValueError(f"simplex {s} is not strictly increasing")
            if s[0] < 0:
                raise ValueError(f"negative vertex in {s}")
            for k in range(1, len(s) + 1):
                closed.update(combinations(s, k))
        if not closed:
            raise ValueError("empty complex")
        maxv = max(s[-1] for s in closed)
        if vertex_count is None:
            vertex_count = maxv + 1
        elif maxv >= vertex_count:
            raise ValueError("vertex index out of range")
        self.vertex_count = vertex_count
        self.simplices = frozenset(closed)
        self.dimension = max(len(s) for s in closed) - 1
        self.name = name
        self._by_dim: dict[int, tuple[tuple[int, ...], ...]] = {}
        for d in range(self.dimension + 1):
            self._by_dim[d] = tuple(sorted(s for s in closed if len(s) == d + 1))
        self._hash = hash((self.vertex_count, self.simplices))

    def simplices_of_dim(self, d: int) -> tuple[tuple[int, ...], ...]:
        return self._by_dim.get(d, ())

    def n_simplices(self, d: int) -> int:
        return len(self._by_dim.get(d, ()))

    def f_vector(self):
        return tuple(self.n_simplices(d) for d in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector()))

    def has_subcomplex(self, other: "SimplicialComplex") -> bool:
        return other.simplices <= self.simplices

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.simplices == other.simplices

    def __hash__(self):
        return self._hash

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"SimplicialComplex(dim={self.dimension}, f={self.f_vector()}{nm})"


def load_complex(text: str) -> SimplicialComplex:
    """Parse the JSON complex format; maximal-face input is face-closed here."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"complex parse error: {e}") from e
    if not isinstance(data, dict) or "simplices" not in data:
        raise ValueError("complex parse error: missing 'simplices'")
    simplices = data["simplices"]
    if not isinstance(simplices, list) or not simplices:
        raise ValueError("empty simplex list")
    for s in simplices:
        if not isinstance(s, list) or not all(isinstance(v, int) for v in s):
            raise ValueError(f"bad simplex entry: {s}")
    return SimplicialComplex(simplices, name=data.get("name"))


def dump_complex(X: SimplicialComplex, maximal_only: bool = True) -> str:
    simps = maximal_simplices(X) if maximal_only else sorted(X.simplices, key=lambda s: (len(s), s))
    payload = {"simplices": [list(s) for s in simps]}
    if X.name:
        payload = {"name": X.name, "simplices": payload["simplices"]}
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def maximal_simplices(X: SimplicialComplex):
    out = []
    for s in sorted(X.simplices, key=lambda s: (-len(s), s)):
        if not any(set(s) < set(t) for t in out):
            out.append(s)
    return sorted(out, key=lambda s: (len(s), s))


def skeleton(X: SimplicialComplex, i: int) -> SimplicialComplex:
    """The i-skeleton; i past dim(X) gives X back."""
    if i < 0:
        raise ValueError("skeleton index must be >= 0")
    if i >= X.dimension:
        return X
    return SimplicialComplex((s for s in X.simplices if len(s) <= i + 1),
                             vertex_count=X.vertex_count)


def basepoint(X: SimplicialComplex) -> SimplicialComplex:
    """The distinguished basepoint subcomplex (vertex 0 by convention)."""
    v = min(s[0] for s in X.simplices if len(s) == 1)
    return SimplicialComplex([(v,)], vertex_count=X.vertex_count)


# ---------------------------------------------------------------------------
# relative cochain complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CochainComplexPresentation:
    """Coboundary matrices of the pair (X, A) over a coefficient ring.

    matrix(p) is delta^p with rows indexed by (p+1)-simplices of X not in
    A and columns by p-simplices not in A; basis(p) gives the column
    order.  Degrees run 0..dim(X) inclusive.
    """

    ring: Ring
    degrees: tuple[int, ...]
    _bases: tuple[tuple[tuple[int, ...], ...], ...]
    _matrices: tuple[SparseIntMatrix, ...]

    def basis(self, p: int):
        if 0 <= p < len(self._bases):
            return self._bases[p]
        return ()

    def dim(self, p: int) -> int:
        return len(self.basis(p))

    def matrix(self, p: int) -> SparseIntMatrix:
        if 0 <= p < len(self._matrices):
            return self._matrices[p]
        return SparseIntMatrix(0, self.dim(p))

    def index_of(self, p: int, simplex) -> int:
        return self.basis(p).index(tuple(simplex))


def relative_cochain_complex(X: SimplicialComplex, A: SimplicialComplex | None,
                             ring: Ring = INT) -> CochainComplexPresentation:
    """Cochain complex of (X, A); A = None means absolute cochains."""
    if A is not None and not X.has_subcomplex(A):
        raise ValueError("A is not a subcomplex of X")
    in_A = A.simplices if A is not None else frozenset()
    top = X.dimension
    bases = []
    for p in range(top + 1):
        bases.append(tuple(s for s in X.simplices_of_dim(p) if s not in in_A))
    matrices = []
    for p in range(top + 1):
        cols = {s: j for j, s in enumerate(bases[p])}
        rows = bases[p + 1] if p + 1 <= top else ()
        M = SparseIntMatrix(len(rows), len(bases[p]))
        for i, tau in enumerate(rows):
            sign = 1
            for k in range(len(tau)):
                face = tau[:k] + tau[k + 1:]
                j = cols.get(face)
                if j is not None:
                    M.set(i, j, sign)
                sign = -sign
        matrices.append(M)
    return CochainComplexPresentation(ring, tuple(range(top + 1)), tuple(bases), tuple(matrices))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def product_complex(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Staircase (shuffle) triangulation of |X| x |Y|.

    Vertices are pairs (a, b), ordered lexicographically and relabelled
    as a * Y.vertex_count + b.  The maximal simplices are the monotone
    staircase chains inside sigma x tau for maximal faces sigma, tau.
    """
    ny = Y.vertex_count
    facets = set()
    for sig in maximal_simplices(X):
        for tau in maximal_simplices(Y):
            p, q = len(sig) - 1, len(tau) - 1
            for path in _staircases(p, q):
                facets.add(tuple(sig[a] * ny + tau[b] for a, b in path))
    name = None
    if X.name and Y.name:
        name = f"{X.name} x {Y.name}"
    return SimplicialComplex(facets, vertex_count=X.vertex_count * ny, name=name)


def _staircases(p: int, q: int):
    """Monotone unit-step paths from (0,0) to (p,q), as vertex chains."""
    def walk(a, b, path):
        if a == p and b == q:
            yield tuple(path)
            return
        if a < p:
            path.append((a + 1, b))
            yield from walk(a + 1, b, path)
            path.pop()
        if b < q:
            path.append((a, b + 1))
            yield from walk(a, b + 1, path)
            path.pop()
    return walk(0, 0, [(0, 0)])


# ---------------------------------------------------------------------------
# stock spaces
# ---------------------------------------------------------------------------

def point() -> SimplicialComplex:
    return SimplicialComplex([(0,)], name="point")


def sphere(n: int) -> SimplicialComplex:
    """S^n as the boundary of the (n+1)-simplex."""
    verts = tuple(range(n + 2))
    return SimplicialComplex(combinations(verts, n + 1), name=f"S{n}")


def circle(k: int = 3) -> SimplicialComplex:
    """A k-gon circle (k >= 3)."""
    if k < 3:
        raise ValueError("need at least 3 vertices")
    edges = [tuple(sorted((i, (i + 1) % k))) for i in range(k)]
    return SimplicialComplex(edges, name="S1")


def solid_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([tuple(range(n + 1))], name=f"D{n}")


def minimal_rp2() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane."""
    triangles = [
        (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
        (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
    ]
    return SimplicialComplex(triangles, name="RP2")


def rp3_from_quotient() -> SimplicialComplex:
    """RP^3 as the antipodal quotient of the barycentric subdivision of
    the boundary of the 4-dimensional cross-polytope.

    Faces of the cross-polytope are the sign-vectors without antipodal
    pairs; the quotient of the subdivision by S -> -S is simplicial
    because a chain never meets both S and -S.
    """
    import itertools
    faces = []
    for k in range(1, 5):
        for axes in itertools.combinations(range(4), k):
            for signs in itertools.product((1, -1), repeat=k):
                faces.append(frozenset(s * (a + 1) for a, s in zip(axes, signs)))
    canon = {}
    for f in faces:
        neg = frozenset(-x for x in f)
        rep = min(tuple(sorted(f)), tuple(sorted(neg)))
        canon[f] = rep
    labels = {rep: i for i, rep in enumerate(sorted(set(canon.values())))}
    facets = set()
    for top in faces:
        if len(top) != 4:
            continue
        elts = sorted(top)
        for order in itertools.permutations(elts):
            chain = [frozenset(order[: i + 1]) for i in range(4)]
            facets.add(tuple(sorted(labels[canon[c]] for c in chain)))
    return SimplicialComplex(facets, name="RP3")
