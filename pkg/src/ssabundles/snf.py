"""Exact sparse linear algebra over Z and over GF(2).

Everything here is pure integer arithmetic (Python ints, so arbitrary
precision).  The Smith normal form keeps full transformation matrices and
their inverses, which is what the group layer needs to lift and project
elements.  Pivoting is deterministic: unit pivots first, then minimal
fill-in, with (|value|, row, col) as the tie break, so bases are
reproducible run to run.
"""

from __future__ import annotations

from math import gcd


class SparseIntMatrix:
    """Sparse integer matrix stored as dict-of-rows plus a column index."""

    __slots__ = ("nrows", "ncols", "rows", "col_index")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        self.col_index: dict[int, set[int]] = {}

    # -- construction -------------------------------------------------

    @classmethod
    def from_entries(cls, nrows, ncols, entries) -> "SparseIntMatrix":
        m = cls(nrows, ncols)
        for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
            m.set(i, j, v)
        return m

    @classmethod
    def from_rows(cls, rowlists) -> "SparseIntMatrix":
        nrows = len(rowlists)
        ncols = len(rowlists[0]) if rowlists else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(rowlists):
            for j, v in enumerate(row):
                if v:
                    m.set(i, j, v)
        return m

    @classmethod
    def identity(cls, n) -> "SparseIntMatrix":
        m = cls(n, n)
        for i in range(n):
            m.set(i, i, 1)
        return m

    def copy(self) -> "SparseIntMatrix":
        m = SparseIntMatrix(self.nrows, self.ncols)
        m.rows = {i: dict(r) for i, r in self.rows.items()}
        m.col_index = {j: set(s) for j, s in self.col_index.items()}
        return m

    # -- element access -----------------------------------------------

    def get(self, i, j) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def set(self, i, j, v) -> None:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError((i, j))
        row = self.rows.get(i)
        if v:
            if row is None:
                row = self.rows[i] = {}
            row[j] = v
            self.col_index.setdefault(j, set()).add(i)
        elif row is not None and j in row:
            del row[j]
            if not row:
                del self.rows[i]
            ci = self.col_index[j]
            ci.discard(i)
            if not ci:
                del self.col_index[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        m = SparseIntMatrix(self.ncols, self.nrows)
        for i, j, v in self.entries():
            m.set(j, i, v)
        return m

    def row_vector(self, i):
        return dict(self.rows.get(i, {}))

    def col_vector(self, j):
        return {i: self.rows[i][j] for i in self.col_index.get(j, ())}

    # -- arithmetic ----------------------------------------------------

    def matvec(self, v):
        """Multiply by a dense column vector (list), returning a list."""
        out = [0] * self.nrows
        for i, row in self.rows.items():
            out[i] = sum(c * v[j] for j, c in row.items())
        return out

    def rmatvec(self, v):
        """vᵀ·M for a dense vector, returning a list of length ncols."""
        out = [0] * self.ncols
        for i, row in self.rows.items():
            vi = v[i]
            if vi:
                for j, c in row.items():
                    out[j] += vi * c
        return out

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseIntMatrix(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if orow:
                    for j, b in orow.items():
                        acc[j] = acc.get(j, 0) + a * b
        # write non-zeros
            for j, v in acc.items():
                if v:
                    out.set(i, j, v)
        return out

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other):
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and \
            {(i, j): v for i, j, v in self.entries()} == \
            {(i, j): v for i, j, v in other.entries()}

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset((i, j, v) for i, j, v in self.entries())))

    def __repr__(self):
        return f"SparseIntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- in-place elementary operations ---------------------------------

    def row_add(self, i, k, c) -> None:
        """row_i += c * row_k."""
        if c == 0 or i == k:
            return
        src = self.rows.get(k)
        if not src:
            return
        for j, v in list(src.items()):
            self.set(i, j, self.get(i, j) + c * v)

    def col_add(self, j, l, c) -> None:
        """col_j += c * col_l."""
        if c == 0 or j == l:
            return
        for i in list(self.col_index.get(l, ())):
            self.set(i, j, self.get(i, j) + c * self.rows[i][l])

    def row_swap(self, i, k) -> None:
        if i == k:
            return
        ri = self.rows.pop(i, None)
        rk = self.rows.pop(k, None)
        for j in set(ri or ()) | set(rk or ()):
            ci = self.col_index.get(j)
            if ci is not None:
                ci.discard(i)
                ci.discard(k)
        if rk:
            self.rows[i] = rk
            for j in rk:
                self.col_index.setdefault(j, set()).add(i)
        if ri:
            self.rows[k] = ri
            for j in ri:
                self.col_index.setdefault(j, set()).add(k)
        for j in list(self.col_index):
            if not self.col_index[j]:
                del self.col_index[j]

    def col_swap(self, j, l) -> None:
        if j == l:
            return
        rows = set(self.col_index.get(j, ())) | set(self.col_index.get(l, ()))
        for i in rows:
            row = self.rows[i]
            a, b = row.get(j), row.get(l)
            if a is None and b is not None:
                row[j] = b
                del row[l]
            elif b is None and a is not None:
                row[l] = a
                del row[j]
            elif a is not None:
                row[j], row[l] = b, a
        cj = {i for i in rows if j in self.rows.get(i, {})}
        cl = {i for i in rows if l in self.rows.get(i, {})}
        base_j = self.col_index.get(j, set()) - rows
        base_l = self.col_index.get(l, set()) - rows
        self._reset_col(j, base_j | cj)
        self._reset_col(l, base_l | cl)

    def _reset_col(self, j, members):
        if members:
            self.col_index[j] = members
        else:
            self.col_index.pop(j, None)

    def row_scale(self, i, c) -> None:
        if c == 1:
            return
        row = self.rows.get(i)
        if not row:
            return
        if c == 0:
            for j in list(row):
                self.set(i, j, 0)
            return
        for j in row:
            row[j] *= c

    def col_scale(self, j, c) -> None:
        if c == 1:
            return
        for i in list(self.col_index.get(j, ())):
            self.set(i, j, self.rows[i][j] * c)


class SmithNormalForm:
    """U·M·V = D with U, V unimodular and D a nonnegative diagonal whose
    entries form a divisibility chain d1 | d2 | ...

    Also carries Uinv and Vinv so that cocycles can be transported into
    kernel coordinates exactly.
    """

    def __init__(self, M: SparseIntMatrix, track: bool = True):
        self.D = M.copy()
        n, m = M.ncols, M.nrows
        self.track = track
        if track:
            self.U = SparseIntMatrix.identity(m)
            self.Uinv = SparseIntMatrix.identity(m)
            self.V = SparseIntMatrix.identity(n)
            self.Vinv = SparseIntMatrix.identity(n)
        self._reduce()
        self.diagonal = [self.D.get(i, i) for i in range(min(m, n))]
        self.rank = sum(1 for d in self.diagonal if d)
        self.invariant_factors = [d for d in self.diagonal if d]

    # elementary ops, mirrored into the transforms ----------------------

    def _row_add(self, i, k, c):
        self.D.row_add(i, k, c)
        if self.track:
            self.U.row_add(i, k, c)
            self.Uinv.col_add(k, i, -c)

    def _col_add(self, j, l, c):
        self.D.col_add(j, l, c)
        if self.track:
            self.V.col_add(j, l, c)
            self.Vinv.row_add(l, j, -c)

    def _row_swap(self, i, k):
        self.D.row_swap(i, k)
        if self.track:
            self.U.row_swap(i, k)
            self.Uinv.col_swap(i, k)

    def _col_swap(self, j, l):
        self.D.col_swap(j, l)
        if self.track:
            self.V.col_swap(j, l)
            self.Vinv.row_swap(j, l)

    def _row_negate(self, i):
        self.D.row_scale(i, -1)
        if self.track:
            self.U.row_scale(i, -1)
            self.Uinv.col_scale(i, -1)

    # main loop ---------------------------------------------------------

    def _find_pivot(self, k):
        best = None
        best_key = None
        for i, row in self.D.rows.items():
            if i < k:
                continue
            rl = len(row)
            for j, v in row.items():
                if j < k:
                    continue
                a = abs(v)
                fill = (rl - 1) * (len(self.D.col_index[j]) - 1)
                key = (0 if a == 1 else 1, fill, a, i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
                    if key[:3] == (0, 0, 1):
                        return best
        return best

    def _reduce(self):
        D = self.D
        k = 0
        limit = min(D.nrows, D.ncols)
        while k < limit:
            piv = self._find_pivot(k)
            if piv is None:
                break
            self._row_swap(k, piv[0])
            self._col_swap(k, piv[1])
            while True:
                p = D.get(k, k)
                if p < 0:
                    self._row_negate(k)
                    p = -p
                # clear column k
                dirty = False
                for i in sorted(self.D.col_index.get(k, ())):
                    if i == k:
                        continue
                    v = D.get(i, k)
                    q = v // p
                    if q:
                        self._row_add(i, k, -q)
                    if D.get(i, k):
                        dirty = True
                if dirty:
                    # a remainder survived; swap the smallest one up and retry
                    cand = min(
                        ((abs(D.get(i, k)), i) for i in self.D.col_index.get(k, ()) if i != k),
                    )
                    self._row_swap(k, cand[1])
                    continue
                # clear row k (column ops cannot dirty column k now)
                dirty = False
                row = D.rows.get(k, {})
                for j in sorted(row):
                    if j == k:
                        continue
                    q = row[j] // p
                    if q:
                        self._col_add(j, k, -q)
                    if D.get(k, j):
                        dirty = True
                if dirty:
                    cand = min(
                        ((abs(v), j) for j, v in D.rows.get(k, {}).items() if j != k),
                    )
                    self._col_swap(k, cand[1])
                    continue
                break
            k += 1
        self._fix_divisibility(k)

    def _fix_divisibility(self, npivots):
        D = self.D
        changed = True
        while changed:
            changed = False
            for i in range(npivots - 1):
                a, b = D.get(i, i), D.get(i + 1, i + 1)
                if a == 0:
                    continue
                if b % a:
                    self._pair_fix(i, i + 1)
                    changed = True

    def _pair_fix(self, i, j):
        """Replace diag(a, b) by diag(gcd, lcm) with explicit 2x2 unimodular
        row and column transforms."""
        D = self.D
        a, b = D.get(i, i), D.get(j, j)
        g = gcd(a, b)
        x, y = _bezout(a, b)
        # row transform T = [[x, y], [-b/g, a/g]], Tinv = [[a/g, -y], [b/g, x]]
        self._apply_2x2_rows(i, j, ((x, y), (-b // g, a // g)), ((a // g, -y), (b // g, x)))
        # col transform S = [[1, -y*b/g], [1, x*a/g]], Sinv = [[x*a/g, y*b/g], [-1, 1]]
        self._apply_2x2_cols(i, j, ((1, -y * b // g), (1, x * a // g)),
                             ((x * a // g, y * b // g), (-1, 1)))

    def _apply_2x2_rows(self, i, j, T, Tinv):
        D = self.D
        cols = set(D.rows.get(i, {})) | set(D.rows.get(j, {}))
        ri = {c: D.get(i, c) for c in cols}
        rj = {c: D.get(j, c) for c in cols}
        for c in cols:
            D.set(i, c, T[0][0] * ri[c] + T[0][1] * rj[c])
            D.set(j, c, T[1][0] * ri[c] + T[1][1] * rj[c])
        if self.track:
            for M, left in ((self.U, True), (self.Uinv, False)):
                if left:
                    cols = set(M.rows.get(i, {})) | set(M.rows.get(j, {}))
                    ri = {c: M.get(i, c) for c in cols}
                    rj = {c: M.get(j, c) for c in cols}
                    for c in cols:
                        M.set(i, c, T[0][0] * ri[c] + T[0][1] * rj[c])
                        M.set(j, c, T[1][0] * ri[c] + T[1][1] * rj[c])
                else:
                    rows = set(M.col_index.get(i, ())) | set(M.col_index.get(j, ()))
                    ci = {r: M.get(r, i) for r in rows}
                    cj = {r: M.get(r, j) for r in rows}
                    for r in rows:
                        M.set(r, i, ci[r] * Tinv[0][0] + cj[r] * Tinv[1][0])
                        M.set(r, j, ci[r] * Tinv[0][1] + cj[r] * Tinv[1][1])

    def _apply_2x2_cols(self, i, j, S, Sinv):
        D = self.D
        rows = set(D.col_index.get(i, ())) | set(D.col_index.get(j, ()))
        ci = {r: D.get(r, i) for r in rows}
        cj = {r: D.get(r, j) for r in rows}
        for r in rows:
            D.set(r, i, ci[r] * S[0][0] + cj[r] * S[1][0])
            D.set(r, j, ci[r] * S[0][1] + cj[r] * S[1][1])
        if self.track:
            M = self.V
            rows = set(M.col_index.get(i, ())) | set(M.col_index.get(j, ()))
            ci = {r: M.get(r, i) for r in rows}
            cj = {r: M.get(r, j) for r in rows}
            for r in rows:
                M.set(r, i, ci[r] * S[0][0] + cj[r] * S[1][0])
                M.set(r, j, ci[r] * S[0][1] + cj[r] * S[1][1])
            M = self.Vinv
            cols = set(M.rows.get(i, {})) | set(M.rows.get(j, {}))
            ri = {c: M.get(i, c) for c in cols}
            rj = {c: M.get(j, c) for c in cols}
            for c in cols:
                M.set(i, c, Sinv[0][0] * ri[c] + Sinv[0][1] * rj[c])
                M.set(j, c, Sinv[1][0] * ri[c] + Sinv[1][1] * rj[c])

    # derived data -------------------------------------------------------

    def kernel_basis(self) -> list[list[int]]:
        """Basis of ker(M) as columns of V beyond the rank (a saturated
        lattice basis)."""
        out = []
        for j in range(self.rank, self.D.ncols):
            col = self.V.col_vector(j)
            vec = [0] * self.D.ncols
            for i, v in col.items():
                vec[i] = v
            out.append(vec)
        return out

    def kernel_coords(self, vec) -> list[int]:
        """Coordinates of a kernel vector in kernel_basis order.

        Asserts that vec really is in the kernel (the leading Vinv
        coordinates must vanish on the rank part).
        """
        w = self.Vinv.matvec(vec)
        for i in range(self.rank):
            if w[i] != 0:
                raise ValueError("vector is not in the kernel lattice")
        return w[self.rank:]

    def solve(self, b):
        """One integer solution x of M·x = b, or None."""
        ub = self.U.matvec(b) if self.track else None
        if ub is None:
            raise RuntimeError("solve requires tracking")
        y = [0] * self.D.ncols
        for i in range(self.D.nrows):
            d = self.D.get(i, i) if i < self.D.ncols else 0
            if d:
                if ub[i] % d:
                    return None
                y[i] = ub[i] // d
            elif ub[i]:
                return None
        return self.V.matvec(y)


def _bezout(a, b):
    """x, y with x*a + y*b = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def smith_normal_form(M: SparseIntMatrix):
    """Public (U, D, V) triple with U·M·V = D."""
    s = SmithNormalForm(M)
    return s.U, s.D, s.V


def solve_int(M: SparseIntMatrix, b):
    return SmithNormalForm(M).solve(b)


# ---------------------------------------------------------------------------
# GF(2) elimination on bitmask rows.
# ---------------------------------------------------------------------------

class F2Matrix:
    """Matrix over GF(2); each row is an int bitmask over the columns."""

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = list(rows) if rows is not None else [0] * nrows

    @classmethod
    def from_int_matrix(cls, M: SparseIntMatrix) -> "F2Matrix":
        rows = [0] * M.nrows
        for i, j, v in M.entries():
            if v & 1:
                rows[i] ^= 1 << j
        return cls(M.nrows, M.ncols, rows)

    @classmethod
    def from_columns(cls, cols, ncols_ambient) -> "F2Matrix":
        """Build from column vectors given as iterables of bits."""
        rows = [0] * ncols_ambient
        for j, col in enumerate(cols):
            for i, bit in enumerate(col):
                if bit & 1:
                    rows[i] ^= 1 << j
        return cls(ncols_ambient, len(cols), rows)

    def matvec_bits(self, v: int) -> int:
        out = 0
        for i, row in enumerate(self.rows):
            if (row & v).bit_count() & 1:
                out |= 1 << i
        return out


class F2Elimination:
    """Reduced row echelon data of an F2Matrix.

    Invariant: every stored echelon row has exactly one pivot bit among
    the pivot columns, so reducing a vector is a single pass.
    """

    def __init__(self, M: F2Matrix):
        self.ncols = M.ncols
        piv: dict[int, int] = {}  # pivot column -> reduced row
        for r in M.rows:
            r = self._reduce(r, piv)
            if r:
                p = r.bit_length() - 1
                for c in list(piv):
                    if (piv[c] >> p) & 1:
                        piv[c] ^= r
                piv[p] = r
        self.pivots = sorted(piv)
        self.rowmap = piv
        self.rank = len(piv)
        self.free_cols = [j for j in range(self.ncols) if j not in piv]

    @staticmethod
    def _reduce(v: int, piv: dict[int, int]) -> int:
        for p, e in piv.items():
            if (v >> p) & 1:
                v ^= e
        return v

    def reduce_vector(self, v: int) -> int:
        return self._reduce(v, self.rowmap)

    def in_row_space(self, v: int) -> bool:
        return self.reduce_vector(v) == 0


def f2_kernel(M: F2Matrix):
    """Kernel basis of M·x = 0 as column bitmasks, plus the free columns.

    The basis vector for free column f is e_f plus pivot-column
    corrections, so a kernel vector's coordinates in this basis are its
    bits at the free columns.
    """
    elim = F2Elimination(M)
    basis = []
    for f in elim.free_cols:
        vec = 1 << f
        for c, row in elim.rowmap.items():
            if (row >> f) & 1:
                vec |= 1 << c
        basis.append(vec)
    return basis, elim.free_cols


def f2_kernel_coords(vec: int, free_cols) -> int:
    out = 0
    for a, f in enumerate(free_cols):
        if (vec >> f) & 1:
            out |= 1 << a
    return out
