"""Exact dense linear algebra over Q or a prime field.

Everything here is plain Gaussian elimination on small matrices of exact
scalars.  The three nonstandard entry points are `rank_and_row_basis` (the
basis is a subset of the input rows, which the variable-separation transform
relies on), `complete_invertible` (extend independent rows to a square
invertible matrix using unit vectors) and `congruence_diagonalize`
(Q A Q^T = D for symmetric A, valid in characteristic != 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fields import Scalar

__all__ = [
    "LinearForm",
    "Matrix",
    "rank_and_row_basis",
    "complete_invertible",
    "congruence_diagonalize",
]


@dataclass(frozen=True)
class LinearForm:
    """A linear form c1*x1 + ... + cn*xn + c0 over n variables."""

    coeffs: tuple
    const: Scalar = 0

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def evaluate(self, point) -> Scalar:
        acc = self.const
        for c, b in zip(self.coeffs, point):
            acc = acc + c * b
        return acc

    def head(self, s: int) -> "LinearForm":
        """Restriction to the first s variables (keeps the constant)."""
        return LinearForm(tuple(self.coeffs[:s]), self.const)

    def tail(self, s: int) -> "LinearForm":
        """Homogeneous part over variables s..n-1, reindexed from 0."""
        return LinearForm(tuple(self.coeffs[s:]), 0)

    def is_zero(self) -> bool:
        return not any(self.coeffs) and not self.const


class Matrix:
    """Immutable rectangular matrix of exact scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "Matrix":
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]})"

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows)) if self.rows else Matrix([])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().rows
        return Matrix(
            [[_dot(r, c) for c in cols] for r in self.rows]
        )

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        a = [list(r) for r in self.rows]
        det = a[0][0] - a[0][0] + 1  # one in the ambient field
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                zero = a[0][0] - a[0][0]
                return zero
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det = det * a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                if a[r][col]:
                    f = a[r][col] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        one = _one_like(self.rows[0][0]) if n else Fraction(1)
        zero = one - one
        a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Matrix([row[n:] for row in a])

    def rank(self) -> int:
        return rank_and_row_basis(self)[0]


def _dot(u, v) -> Scalar:
    it = iter(zip(u, v))
    x, y = next(it)
    acc = x * y
    for x, y in it:
        acc = acc + x * y
    return acc


def _one_like(x) -> Scalar:
    return x - x + 1


def rank_and_row_basis(m: Matrix):
    """Rank, a row-subset basis of the row space, and coordinates.

    Returns (rank, basis, coords) where `basis` is the first maximal
    independent subset of the rows of `m` (as homogeneous LinearForms, in row
    order) and `coords` is an nrows x rank matrix with coords * basis == m.
    """
    if not m.rows:
        return 0, [], Matrix([])
    if m.ncols == 0:
        return 0, [], Matrix([[] for _ in m.rows])
    zero = m.rows[0][0] - m.rows[0][0]
    echelon: list[tuple[list, int, list]] = []  # (vector, pivot col, combo over basis)
    basis_rows: list[tuple] = []
    coords: list[list] = []
    for row in m.rows:
        vec = list(row)
        combo = [zero] * len(basis_rows)
        for evec, piv, ecombo in echelon:
            if vec[piv]:
                f = vec[piv] / evec[piv]
                vec = [x - f * y for x, y in zip(vec, evec)]
                for t, c in enumerate(ecombo):
                    combo[t] = combo[t] + f * c
        piv = next((j for j, x in enumerate(vec) if x), None)
        if piv is None:
            coords.append(combo)
        else:
            new_combo = [-c for c in combo] + [_one_like(vec[piv])]
            for entry in echelon:
                entry[2].append(zero)
            echelon.append((vec, piv, new_combo))
            basis_rows.append(row)
            coords.append([zero] * len(basis_rows[:-1]) + [_one_like(vec[piv])])
    rank = len(basis_rows)
    coords = [list(c) + [zero] * (rank - len(c)) for c in coords]
    basis = [LinearForm(r) for r in basis_rows]
    return rank, basis, Matrix(coords)


def complete_invertible(partial_rows, n: int) -> Matrix:
    """Extend independent rows to an invertible n x n matrix with unit vectors.

    Rejects dependent input rows.  The appended rows are standard basis
    vectors e_j for the non-pivot columns of the input, so the result is
    always invertible and block-structured when the inputs are.
    """
    rows = []
    for r in partial_rows:
        if isinstance(r, LinearForm):
            if r.const:
                raise ValueError("completion rows must be homogeneous")
            r = r.coeffs
        r = tuple(r)
        if len(r) != n:
            raise ValueError("row length mismatch")
        rows.append(r)
    if len(rows) > n:
        raise ValueError("more rows than columns")
    if rows:
        rank, _, _ = rank_and_row_basis(Matrix(rows))
        if rank != len(rows):
            raise ValueError("input rows are linearly dependent")
        some = rows[0][0]
    else:
        some = Fraction(0)
    one = _one_like(some)
    zero = one - one
    # Pivot columns of the echelon form of the given rows.
    work = [list(r) for r in rows]
    pivots = set()
    reduced: list[tuple[list, int]] = []
    for vec in work:
        for evec, piv in reduced:
            if vec[piv]:
                f = vec[piv] / evec[piv]
                vec = [x - f * y for x, y in zip(vec, evec)]
        piv = next(j for j, x in enumerate(vec) if x)
        reduced.append((vec, piv))
        pivots.add(piv)
    out = list(rows)
    for j in range(n):
        if j not in pivots:
            out.append(tuple(one if t == j else zero for t in range(n)))
    return Matrix(out)


def congruence_diagonalize(a: Matrix):
    """Invertible Q and diagonal D with Q * A * Q^T == D, exactly.

    Symmetric Gaussian elimination: the same row operation is applied to rows
    and columns.  A zero diagonal pivot with a nonzero entry below it is fixed
    by adding row/column j to row/column i, which requires characteristic
    different from 2.  The number of nonzero diagonal entries of D equals
    rank(A).
    """
    if not a.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = a.nrows
    if n == 0:
        return Matrix([]), Matrix([])
    one = _one_like(a.rows[0][0])
    if one + one == one - one:
        raise ValueError("characteristic 2 is not supported")
    zero = one - one
    m = [list(r) for r in a.rows]
    q = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def add_row_col(i, j, f):
        # row_i += f*row_j, col_i += f*col_j, mirrored into q
        for t in range(n):
            m[i][t] = m[i][t] + f * m[j][t]
        for t in range(n):
            m[t][i] = m[t][i] + f * m[t][j]
        for t in range(n):
            q[i][t] = q[i][t] + f * q[j][t]

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for t in range(n):
            m[t][i], m[t][j] = m[t][j], m[t][i]
        q[i], q[j] = q[j], q[i]

    for i in range(n):
        if not m[i][i]:
            j = next((t for t in range(i + 1, n) if m[t][i]), None)
            if j is None:
                continue  # column already clear; diagonal entry stays zero
            if m[j][j]:
                swap(i, j)
            else:
                add_row_col(i, j, one)
        for j in range(i + 1, n):
            if m[j][i]:
                add_row_col(j, i, -m[j][i] / m[i][i])
    d = Matrix([[m[i][j] if i == j else zero for j in range(n)] for i in range(n)])
    return Matrix(q), d
