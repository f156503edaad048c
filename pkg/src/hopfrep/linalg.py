"""Dense exact linear algebra over Q(sqrt(d)) scalars.

Everything is small (desk scale, dims <= ~64) and dense; matrices are lists of
rows of :class:`~hopfrep.field.Scalar` and are treated as immutable once
built.  Row reduction uses leftmost-pivot Gaussian elimination, which makes
echelon bases, kernels and complements deterministic.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .field import ONE, ZERO, Scalar

Vec = List[Scalar]


class Mat:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[Scalar.of(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zeros(n: int, m: int) -> "Mat":
        return Mat([[ZERO] * m for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_cols(cols: Sequence[Vec]) -> "Mat":
        if not cols:
            return Mat([])
        n = len(cols[0])
        return Mat([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    @staticmethod
    def diag(entries: Sequence) -> "Mat":
        n = len(entries)
        m = Mat.zeros(n, n)
        for i, x in enumerate(entries):
            m.rows[i][i] = Scalar.of(x)
        return m

    def copy(self) -> "Mat":
        return Mat([row[:] for row in self.rows])

    # -- basics ----------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(self.rows[i][j] == other.rows[i][j] for i in range(self.nrows) for j in range(self.ncols))
        )

    def __hash__(self):
        return hash(tuple(tuple(x.sort_key() for x in row) for row in self.rows))

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self):
        from .field import format_scalar

        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.rows)
        return f"Mat[{body}]"

    def sort_key(self):
        return tuple(tuple(x.sort_key() for x in row) for row in self.rows)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.rows])

    def scale(self, c) -> "Mat":
        c = Scalar.of(c)
        return Mat([[c * a for a in row] for row in self.rows])

    def __mul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        ot = list(zip(*other.rows))  # columns of other
        out = []
        for row in self.rows:
            out_row = []
            for col in ot:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Mat(out)

    def mat_vec(self, v: Vec) -> Vec:
        out = []
        for row in self.rows:
            acc = ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> "Mat":
        return Mat([list(col) for col in zip(*self.rows)]) if self.nrows else Mat([])

    def power(self, k: int) -> "Mat":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        out = Mat.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def col(self, j: int) -> Vec:
        return [row[j] for row in self.rows]

    def cols(self) -> List[Vec]:
        return [self.col(j) for j in range(self.ncols)]

    def trace(self) -> Scalar:
        t = ZERO
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t


def hstack(*mats: Mat) -> Mat:
    rows = [[] for _ in range(mats[0].nrows)]
    for m in mats:
        for i in range(m.nrows):
            rows[i].extend(m.rows[i])
    return Mat(rows)


def vstack(*mats: Mat) -> Mat:
    rows = []
    for m in mats:
        rows.extend(row[:] for row in m.rows)
    return Mat(rows)


def block_diag(*mats: Mat) -> Mat:
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    out = Mat.zeros(n, c)
    i0 = j0 = 0
    for m in mats:
        for i in range(m.nrows):
            for j in range(m.ncols):
                out.rows[i0 + i][j0 + j] = m.rows[i][j]
        i0 += m.nrows
        j0 += m.ncols
    return out


def block2x2(tl: Mat, tr: Mat, bl: Mat, br: Mat) -> Mat:
    return vstack(hstack(tl, tr), hstack(bl, br))


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product; (A (x) B)(C (x) D) = AC (x) BD."""
    out = Mat.zeros(a.nrows * b.nrows, a.ncols * b.ncols)
    for i in range(a.nrows):
        for j in range(a.ncols):
            x = a.rows[i][j]
            if not x:
                continue
            for k in range(b.nrows):
                for l in range(b.ncols):
                    y = b.rows[k][l]
                    if y:
                        out.rows[i * b.nrows + k][j * b.ncols + l] = x * y
    return out


# -- elimination -------------------------------------------------------------


def rref(m: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form and pivot column indices (leftmost pivots)."""
    a = [row[:] for row in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c].inv()
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Mat(a), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> List[Vec]:
    """Echelon basis of the right kernel {v : m v = 0}."""
    r, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r.rows[i][f]
        basis.append(v)
    return basis


def image_basis(m: Mat) -> List[Vec]:
    """Basis of the column space: the pivot columns of m itself."""
    _, pivots = rref(m)
    return [m.col(j) for j in pivots]


def det(m: Mat) -> Scalar:
    if not m.is_square():
        raise ValueError("determinant of non-square matrix")
    a = [row[:] for row in m.rows]
    n = m.nrows
    d = ONE
    for c in range(n):
        pr = None
        for i in range(c, n):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            return ZERO
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            d = -d
        d = d * a[c][c]
        inv = a[c][c].inv()
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m: Mat) -> Mat:
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    n = m.nrows
    aug, pivots = rref(hstack(m, Mat.identity(n)))
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat([row[n:] for row in aug.rows])


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """One solution of a x = b, or None."""
    aug, pivots = rref(hstack(a, Mat.from_cols([b])))
    x = [ZERO] * a.ncols
    for i, p in enumerate(pivots):
        if p == a.ncols:
            return None  # pivot in the constant column: inconsistent
        x[p] = aug.rows[i][a.ncols]
    return x


def in_span(basis: List[Vec], v: Vec) -> bool:
    if not basis:
        return all(not x for x in v)
    return solve(Mat.from_cols(basis), v) is not None


def span_basis(vectors: List[Vec]) -> List[Vec]:
    """Echelon basis of the span of the given vectors (possibly empty)."""
    if not vectors:
        return []
    r, pivots = rref(Mat(vectors))  # rows = vectors
    return [list(r.rows[i]) for i in range(len(pivots))]


def extend_to_basis(basis: List[Vec], n: int) -> List[Vec]:
    """Complete an independent family to a basis of k^n.

    Standard basis vectors are appended greedily, leftmost index first, so the
    resulting complement is deterministic.
    """
    cur = [v[:] for v in basis]
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        if not in_span(cur, e):
            cur.append(e)
        if len(cur) == n:
            break
    if len(cur) != n:
        raise ValueError("input family was not independent")
    return cur


def coords_in_basis(basis: List[Vec], v: Vec) -> Vec:
    c = solve(Mat.from_cols(basis), v)
    if c is None:
        raise ValueError("vector not in span of basis")
    return c
