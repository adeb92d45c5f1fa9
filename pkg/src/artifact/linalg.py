"""Exact sparse linear algebra over the rationals (gmpy2.mpq scalars)."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

SVec = dict  # index -> nonzero scalar


def vadd(acc: SVec, v: Mapping, c=1) -> SVec:
    """acc += c*v in place; zero entries are dropped."""
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Mapping, c) -> SVec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class SparseMatrix:
    """Column-sparse matrix: cols[j] maps row index to a nonzero entry."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[SVec] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{i: mpq(1)} for i in range(n)])

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        cols = [{i: mpq(rows[i][j]) for i in range(nr) if rows[i][j]} for j in range(nc)]
        return cls(nr, nc, cols)

    def to_dense(self) -> list[list[mpq]]:
        out = [[mpq(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, mpq(0))

    def apply(self, v: Mapping) -> SVec:
        out: SVec = {}
        for j, c in v.items():
            col = self.cols[j]
            if col:
                vadd(out, col, c)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(col) for col in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.combine(other, -1)

    def combine(self, other: "SparseMatrix", c) -> "SparseMatrix":
        """self + c*other."""
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return SparseMatrix(
            self.nrows, self.ncols, [vadd(dict(a), b, c) for a, b in zip(self.cols, other.cols)]
        )

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vscale(col, c) for col in self.cols])

    def commutator(self, other: "SparseMatrix") -> "SparseMatrix":
        return (self @ other) - (other @ self)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def transpose(self) -> "SparseMatrix":
        cols: list[SVec] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols)

    def trace(self):
        return sum((col.get(j, 0) for j, col in enumerate(self.cols)), mpq(0))

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        n2 = other.nrows
        cols = []
        for a in self.cols:
            for b in other.cols:
                cols.append({i * n2 + k: x * y for i, x in a.items() for k, y in b.items()})
        return SparseMatrix(self.nrows * other.nrows, self.ncols * other.ncols, cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.cols == other.cols
        )


class RowReducer:
    """Incremental exact echelon form; add vectors one at a time and query rank."""

    def __init__(self):
        self.pivots: dict = {}  # pivot index -> reduced row with leading entry 1

    def reduce(self, v: Mapping) -> SVec:
        w = dict(v)
        while w:
            k = min(w)
            row = self.pivots.get(k)
            if row is None:
                return w
            vadd(w, row, -w[k])
        return w

    def add(self, v: Mapping) -> bool:
        """Insert v; return True iff it was independent of the previous vectors."""
        w = self.reduce(v)
        if not w:
            return False
        k = min(w)
        self.pivots[k] = vscale(w, 1 / mpq(w[k]))
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(vectors: Iterable[Mapping]) -> int:
    rr = RowReducer()
    for v in vectors:
        rr.add(v)
    return rr.rank


def solve_dense(a: list[list], b: list[list]) -> list[list[mpq]]:
    """Solve a x = b for square nonsingular a (dense, exact)."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [[mpq(x) for x in a[i]] + [mpq(x) for x in b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n : n + m] for row in aug]


def invert_dense(a: list[list]) -> list[list[mpq]]:
    n = len(a)
    return solve_dense(a, [[int(i == j) for j in range(n)] for i in range(n)])


def as_plain(x):
    """Convert an mpq to int when integral, else to a 'p/q' string (for JSON)."""
    x = mpq(x)
    if x.denominator == 1:
        return int(x.numerator)
    return f"{int(x.numerator)}/{int(x.denominator)}"
