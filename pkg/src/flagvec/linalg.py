"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; there is no floating
point anywhere.  Rank and echelon forms go through Bareiss fraction-free
elimination on integer rows (each row is first scaled by the lcm of its
denominators, which does not change the row space), and only the final
back-substitution to reduced row echelon form uses fractions.

Matrices may be passed as :class:`QMatrix` or as any sequence of sequences of
numbers.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Number = int | Fraction


class InfeasibleError(ValueError):
    """A linear system (or LP) has no solution.

    ``certificate`` is a row vector ``y`` with ``y A = 0`` and ``y b = 1`` when
    one was produced.
    """

    def __init__(self, message: str, certificate: tuple[Fraction, ...] | None = None):
        super().__init__(message)
        self.certificate = certificate


class QMatrix:
    """Immutable dense matrix of fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[Number]], cols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("matrix rows must all have the same length")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(([0] * cols for _ in range(rows)), cols)

    def __getitem__(self, index):
        return self.data[index]

    def __iter__(self):
        return iter(self.data)

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.cols == other.cols and self.data == other.data

    def __hash__(self):
        return hash((self.cols, self.data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.data)
        return f"QMatrix([{body}], cols={self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "QMatrix":
        return QMatrix((tuple(r[j] for r in self.data) for j in range(self.cols)), self.rows)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        return QMatrix(([sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                        for row in self.data), other.cols)

    def apply(self, vector: Sequence[Number]) -> tuple[Fraction, ...]:
        """Matrix-vector product ``M v``."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * Fraction(b) for a, b in zip(row, vector)), Fraction(0)) for row in self.data)

    def to_strings(self) -> list[list[str]]:
        return [[format_fraction(x) for x in row] for row in self.data]


def format_fraction(x: Number) -> str:
    """Exact ``"p/q"`` encoding with ``q > 0`` and the fraction reduced."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str | int) -> Fraction:
    return Fraction(text)


def _as_matrix(m, cols: int | None = None) -> QMatrix:
    if isinstance(m, QMatrix):
        return m
    return QMatrix(m, cols)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    # row echelon form; every entry stays an integer minor of the input
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        top = m[r]
        piv = top[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - f * top[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m) -> int:
    """Exact rank."""
    mat = _as_matrix(m)
    if mat.rows == 0 or mat.cols == 0:
        return 0
    _, pivots = _bareiss(_integer_rows(mat.data), mat.cols)
    return len(pivots)


def rref(m) -> tuple[QMatrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and the pivot columns."""
    mat = _as_matrix(m)
    if mat.rows == 0 or mat.cols == 0:
        return QMatrix([], mat.cols), ()
    ech, pivots = _bareiss(_integer_rows(mat.data), mat.cols)
    rows = [[Fraction(x) for x in row] for row in ech]
    for k in reversed(range(len(rows))):
        c = pivots[k]
        lead = rows[k][c]
        rows[k] = [x / lead for x in rows[k]]
        pivot_row = rows[k]
        for i in range(k):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
    return QMatrix(rows, mat.cols), tuple(pivots)


def nullspace(m, cols: int | None = None) -> QMatrix:
    """Basis (rows, reduced echelon form) of ``{x : M x = 0}``."""
    mat = _as_matrix(m, cols)
    n = mat.cols
    reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row, c in zip(reduced.data, pivots):
            v[c] = -row[free]
        basis.append(v)
    if not basis:
        return QMatrix([], n)
    return rref(QMatrix(basis, n))[0]


def left_nullspace(m, cols: int | None = None) -> QMatrix:
    """Basis of ``{y : y M = 0}``: the linear relations among the rows of M."""
    mat = _as_matrix(m, cols)
    return nullspace(mat.transpose(), mat.rows)


def solve(a, b: Sequence[Number], cols: int | None = None) -> tuple[Fraction, ...]:
    """One exact solution of ``A x = b``.

    Free variables are set to zero, so the support lies inside the pivot
    columns of the echelon form.  Raises :class:`InfeasibleError` carrying a
    certificate ``y`` (``y A = 0``, ``y b = 1``) when there is no solution.
    """
    mat = _as_matrix(a, cols)
    if len(b) != mat.rows:
        raise ValueError(f"dimension mismatch: {mat.rows} equations but {len(b)} right-hand sides")
    n = mat.cols
    augmented = QMatrix((list(row) + [Fraction(v)] for row, v in zip(mat.data, b)), n + 1)
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == n:
        bvec = [Fraction(v) for v in b]
        for y in left_nullspace(mat):
            yb = sum((p * q for p, q in zip(y, bvec)), Fraction(0))
            if yb:
                raise InfeasibleError("system is infeasible", tuple(v / yb for v in y))
        raise InfeasibleError("system is infeasible")  # pragma: no cover
    x = [Fraction(0)] * n
    for row, c in zip(reduced.data, pivots):
        x[c] = row[n]
    return tuple(x)


def affine_dim(points: Sequence[Sequence[Number]]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise ValueError("affine_dim needs at least one point")
    base = [Fraction(x) for x in points[0]]
    diffs = [[Fraction(x) - y for x, y in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(QMatrix(diffs, len(base)))


def _phase_one(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Whether ``A x = b, x >= 0`` is feasible; simplex with Bland's rule."""
    m = len(a)
    n = len(a[0]) if a else 0
    tableau = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        artificial = [Fraction(int(k == i)) for k in range(m)]
        tableau.append([sign * x for x in a[i]] + artificial + [sign * b[i]])
    basis = [n + i for i in range(m)]
    width = n + m
    while True:
        # reduced cost of column j: c_j - sum over basic rows, with c = 1 on artificials
        reduced = []
        for j in range(width):
            cost = Fraction(int(j >= n))
            for i in range(m):
                if basis[i] >= n:
                    cost -= tableau[i][j]
            reduced.append(cost)
        entering = next((j for j in range(width) if reduced[j] < 0), None)
        if entering is None:
            break
        leave = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                key = (tableau[i][-1] / coef, basis[i])
                if leave is None or key < leave[0]:
                    leave = (key, i)
        if leave is None:  # pragma: no cover - phase one is bounded below by zero
            break
        r = leave[1]
        piv = tableau[r][entering]
        tableau[r] = [x / piv for x in tableau[r]]
        for i in range(m):
            f = tableau[i][entering]
            if i != r and f:
                tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[r])]
        basis[r] = entering
    residual = sum((tableau[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    return residual == 0


def in_convex_hull(p: Sequence[Number], points: Sequence[Sequence[Number]]) -> bool:
    """Whether ``p`` is a convex combination of ``points`` (exact LP)."""
    if not points:
        return False
    d = len(p)
    if any(len(q) != d for q in points):
        raise ValueError("all points must have the same dimension")
    a = [[Fraction(q[r]) for q in points] for r in range(d)]
    a.append([Fraction(1)] * len(points))
    b = [Fraction(x) for x in p] + [Fraction(1)]
    return _phase_one(a, b)


def hull_vertex_test(p: Sequence[Number], others: Sequence[Sequence[Number]]) -> bool:
    """True iff ``p`` is *not* a convex combination of ``others``."""
    return not in_convex_hull(p, others)


class EchelonBasis:
    """Incrementally maintained reduced echelon basis of a row space.

    Rows are dense lists of fractions of a fixed width.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: dict[int, list[Fraction]] = {}

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def rows(self) -> list[tuple[Fraction, ...]]:
        return [tuple(self._rows[c]) for c in sorted(self._rows)]

    def reduce(self, row: Sequence[Number]) -> list[Fraction]:
        v = [Fraction(x) for x in row]
        if len(v) != self.width:
            raise ValueError("row width mismatch")
        for c, basis_row in self._rows.items():
            f = v[c]
            if f:
                v = [x - f * y for x, y in zip(v, basis_row)]
        return v

    def add(self, row: Sequence[Number]) -> bool:
        """Add ``row``; returns False when it was already in the span."""
        v = self.reduce(row)
        lead = next((c for c, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = v[lead]
        v = [x / inv for x in v]
        for c, basis_row in self._rows.items():
            f = basis_row[lead]
            if f:
                self._rows[c] = [x - f * y for x, y in zip(basis_row, v)]
        self._rows[lead] = v
        return True

    def contains(self, row: Sequence[Number]) -> bool:
        return not any(self.reduce(row))

