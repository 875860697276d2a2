"""
Exact rational, rational-complex and rational-quaternion arithmetic.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator). Vectors are plain tuples of fractions so they hash and compare
by value; matrices are small immutable dataclasses. Nothing here uses floats.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from alcove_cat.errors import DimensionMismatchError, PreconditionError

logger = logging.getLogger(__name__)

Rat = Fraction
QVec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


def qvec(values: Iterable[Union[int, str, Fraction]]) -> QVec:
    """Build a QVec from ints, fractions or ``"p/q"`` strings."""
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> QVec:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> QVec:
    """The i-th standard basis vector (0-based) of length n."""
    return tuple(ONE if j == i else ZERO for j in range(n))


def _check_len(u: Sequence[Fraction], v: Sequence[Fraction]) -> None:
    if len(u) != len(v):
        raise DimensionMismatchError(f"Vector lengths differ: {len(u)} vs {len(v)}")


def vec_add(u: QVec, v: QVec) -> QVec:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: QVec, v: QVec) -> QVec:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction | int, v: QVec) -> QVec:
    return tuple(c * a for a in v)


def vec_neg(v: QVec) -> QVec:
    return tuple(-a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    _check_len(u, v)
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def is_integral(v: Iterable[Fraction]) -> bool:
    return all(a.denominator == 1 for a in v)


def lerp(u: QVec, v: QVec, s: Fraction) -> QVec:
    """The point (1 - s)u + sv."""
    _check_len(u, v)
    return tuple((1 - s) * a + s * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QMat:
    """
    Immutable rational matrix stored as a tuple of row tuples.

    Example:
        >>> m = QMat.from_rows([[1, 2], [3, 4]])
        >>> (m @ QMat.identity(2)) == m
        True
    """

    rows: tuple[QVec, ...]
    ncols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatchError(
                    f"Row of length {len(row)} in matrix with {self.ncols} columns"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Union[int, str, Fraction]]]) -> "QMat":
        built = tuple(qvec(r) for r in rows)
        ncols = len(built[0]) if built else 0
        return cls(built, ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[QVec]) -> "QMat":
        if not cols:
            raise DimensionMismatchError("Cannot build a matrix from zero columns")
        return cls.from_rows(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMat":
        return cls(tuple(zero_vec(ncols) for _ in range(nrows)), ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[Union[int, Fraction]]) -> "QMat":
        n = len(entries)
        return cls(
            tuple(
                tuple(Fraction(entries[i]) if i == j else ZERO for j in range(n))
                for i in range(n)
            ),
            n,
        )

    @classmethod
    def outer(cls, u: QVec, v: QVec) -> "QMat":
        return cls(tuple(tuple(a * b for b in v) for a in u), len(v))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> QVec:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "QMat":
        if not self.rows:
            return QMat((), 0)
        return QMat(tuple(zip(*self.rows)), self.nrows)

    def apply(self, v: QVec) -> QVec:
        if len(v) != self.ncols:
            raise DimensionMismatchError(
                f"Cannot apply {self.nrows}x{self.ncols} matrix to vector of length {len(v)}"
            )
        return tuple(dot(row, v) for row in self.rows)

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.shape} by {other.shape}"
            )
        cols = list(zip(*other.rows)) if other.rows else []
        return QMat(
            tuple(tuple(dot(row, col) for col in cols) for row in self.rows),
            other.ncols,
        )

    def __add__(self, other: "QMat") -> "QMat":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        return QMat(
            tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: "QMat") -> "QMat":
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"Cannot subtract {self.shape} and {other.shape}"
            )
        return QMat(
            tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols
        )

    def scale(self, c: Fraction | int) -> "QMat":
        return QMat(tuple(vec_scale(c, r) for r in self.rows), self.ncols)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == QMat.identity(self.nrows)

    def power(self, e: int) -> "QMat":
        if self.nrows != self.ncols:
            raise DimensionMismatchError("Only square matrices have powers")
        result = QMat.identity(self.nrows)
        for _ in range(e):
            result = result @ self
        return result

    def determinant(self) -> Fraction:
        if self.nrows != self.ncols:
            raise DimensionMismatchError("Determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = ONE
        for c in range(n):
            pivot = next((r for r in range(c, n) if rows[r][c] != 0), None)
            if pivot is None:
                return ZERO
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = -det
            det *= rows[c][c]
            for r in range(c + 1, n):
                factor = rows[r][c] / rows[c][c]
                if factor:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[c])]
        return det

    def rank(self) -> int:
        _, pivots = _row_reduce([list(r) for r in self.rows], self.ncols)
        return len(pivots)

    def inverse(self) -> "QMat":
        """
        Exact inverse by Gauss-Jordan elimination.

        Raises:
            PreconditionError: If the matrix is singular or not square
        """
        n = self.nrows
        if n != self.ncols:
            raise PreconditionError(f"Cannot invert non-square {self.shape} matrix")
        aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(self.rows)]
        reduced, pivots = _row_reduce(aug, n)
        if len(pivots) < n:
            raise PreconditionError("Matrix is singular")
        return QMat(tuple(tuple(row[n:]) for row in reduced), n)


def _row_reduce(
    rows: list[list[Fraction]], ncols: int
) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns, in place."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_linear(A: QMat, b: QVec) -> Optional[QVec]:
    """
    Solve ``A x = b`` exactly.

    Free variables of an underdetermined system are set to zero, so the
    returned solution is deterministic.

    Args:
        A: Coefficient matrix
        b: Right-hand side with one entry per row of A

    Returns:
        The solution vector, or None when the system is inconsistent

    Raises:
        DimensionMismatchError: If b does not have A.nrows entries

    Example:
        >>> solve_linear(QMat.from_rows([[1, 1], [1, -1]]), qvec([2, 0]))
        (Fraction(1, 1), Fraction(1, 1))
    """
    if len(b) != A.nrows:
        raise DimensionMismatchError(
            f"Right-hand side has {len(b)} entries, matrix has {A.nrows} rows"
        )
    aug = [list(row) + [rhs] for row, rhs in zip(A.rows, b)]
    reduced, pivots = _row_reduce(aug, A.ncols)
    for row in reduced[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [ZERO] * A.ncols
    for i, c in enumerate(pivots):
        x[c] = reduced[i][-1]
    return tuple(x)


# ---------------------------------------------------------------------------
# Rational complex numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CRat:
    """Rational complex number re + im*i."""

    re: Fraction = ZERO
    im: Fraction = ZERO

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "CRat") -> "CRat":
        return CRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CRat") -> "CRat":
        return CRat(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __mul__(self, other: "CRat") -> "CRat":
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "CRat":
        return CRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "CRat":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("CRat division by zero")
        return CRat(self.re / n, -self.im / n)

    def __truediv__(self, other: "CRat") -> "CRat":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def complex_determinant(rows: Sequence[Sequence[CRat]]) -> CRat:
    """Determinant of a square CRat matrix by Gaussian elimination."""
    work = [list(r) for r in rows]
    n = len(work)
    if any(len(r) != n for r in work):
        raise DimensionMismatchError("Determinant of a non-square complex matrix")
    det = CRat(ONE)
    for c in range(n):
        pivot = next((r for r in range(c, n) if not work[r][c].is_zero()), None)
        if pivot is None:
            return CRat()
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        det = det * work[c][c]
        inv = work[c][c].inverse()
        for r in range(c + 1, n):
            if work[r][c].is_zero():
                continue
            factor = work[r][c] * inv
            work[r] = [a - factor * b for a, b in zip(work[r], work[c])]
    return det


# ---------------------------------------------------------------------------
# Rational quaternions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuatRat:
    """
    Rational quaternion a + b*i + c*j + d*k.

    Example:
        >>> QuatRat(0, 1, 0, 0) * QuatRat(0, 0, 1, 0) == QUAT_K
        True
    """

    a: Fraction = ZERO
    b: Fraction = ZERO
    c: Fraction = ZERO
    d: Fraction = ZERO

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def real(cls, x: Union[int, Fraction]) -> "QuatRat":
        return cls(Fraction(x))

    def __add__(self, other: "QuatRat") -> "QuatRat":
        return QuatRat(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    def __sub__(self, other: "QuatRat") -> "QuatRat":
        return QuatRat(
            self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d
        )

    def __neg__(self) -> "QuatRat":
        return QuatRat(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: "QuatRat") -> "QuatRat":
        return quat_mul(self, other)

    def scale(self, x: Union[int, Fraction]) -> "QuatRat":
        return QuatRat(self.a * x, self.b * x, self.c * x, self.d * x)

    def conj(self) -> "QuatRat":
        return QuatRat(self.a, -self.b, -self.c, -self.d)

    def norm2(self) -> Fraction:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2

    def inverse(self) -> "QuatRat":
        """q^-1 = conj(q) / |q|^2."""
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("Quaternion inverse of zero")
        return self.conj().scale(1 / n)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_real(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def complex_parts(self) -> tuple[CRat, CRat]:
        """Split q = A + B*j with A = a + b*i and B = c + d*i."""
        return CRat(self.a, self.b), CRat(self.c, self.d)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.d

    def __str__(self) -> str:
        terms = []
        for coeff, unit in zip(self.components(), ("", "i", "j", "k")):
            if coeff == 0:
                continue
            mag = "" if abs(coeff) == 1 and unit else str(abs(coeff))
            sign = "-" if coeff < 0 else "+"
            terms.append(f"{sign}{mag}{unit}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


QUAT_ZERO = QuatRat()
QUAT_ONE = QuatRat(1)
QUAT_I = QuatRat(0, 1, 0, 0)
QUAT_J = QuatRat(0, 0, 1, 0)
QUAT_K = QuatRat(0, 0, 0, 1)


def quat_mul(p: QuatRat, q: QuatRat) -> QuatRat:
    """Hamilton product, i*j = k, j*k = i, k*i = j, i^2 = j^2 = k^2 = -1."""
    return QuatRat(
        p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
        p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
        p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
        p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
    )


QuatRow = tuple[QuatRat, ...]


@dataclass(frozen=True)
class QuatMatrix:
    """
    Immutable matrix of rational quaternions acting on the left of column
    vectors; column spaces are right H-modules.
    """

    rows: tuple[QuatRow, ...]
    ncols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatchError(
                    f"Row of length {len(row)} in quaternion matrix with "
                    f"{self.ncols} columns"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[QuatRat]]) -> "QuatMatrix":
        built = tuple(tuple(r) for r in rows)
        return cls(built, len(built[0]) if built else 0)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[QuatRat]]) -> "QuatMatrix":
        return cls.from_rows(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls.diagonal([QUAT_ONE] * n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QuatMatrix":
        return cls(tuple((QUAT_ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diagonal(cls, entries: Sequence[QuatRat]) -> "QuatMatrix":
        n = len(entries)
        return cls(
            tuple(
                tuple(entries[i] if i == j else QUAT_ZERO for j in range(n))
                for i in range(n)
            ),
            n,
        )

    @classmethod
    def from_rational(cls, m: QMat) -> "QuatMatrix":
        return cls(
            tuple(tuple(QuatRat(x) for x in row) for row in m.rows), m.ncols
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def column(self, j: int) -> tuple[QuatRat, ...]:
        return tuple(row[j] for row in self.rows)

    def select_columns(self, indices: Iterable[int]) -> "QuatMatrix":
        idx = list(indices)
        return QuatMatrix(tuple(tuple(row[j] for j in idx) for row in self.rows), len(idx))

    def delete_row(self, i: int) -> "QuatMatrix":
        return QuatMatrix(self.rows[:i] + self.rows[i + 1 :], self.ncols)

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(
                f"Cannot multiply quaternion matrices {self.shape} and {other.shape}"
            )
        out = []
        for row in self.rows:
            out_row = []
            for j in range(other.ncols):
                acc = QUAT_ZERO
                for t, x in enumerate(row):
                    if not x.is_zero():
                        acc = acc + x * other.rows[t][j]
                out_row.append(acc)
            out.append(tuple(out_row))
        return QuatMatrix(tuple(out), other.ncols)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot add {self.shape} and {other.shape}")
        return QuatMatrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
            self.ncols,
        )

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "QuatMatrix":
        return self.scale(-1)

    def scale(self, x: Union[int, Fraction]) -> "QuatMatrix":
        return QuatMatrix(
            tuple(tuple(q.scale(x) for q in row) for row in self.rows), self.ncols
        )

    def right_mul_scalar(self, q: QuatRat) -> "QuatMatrix":
        return QuatMatrix(
            tuple(tuple(x * q for x in row) for row in self.rows), self.ncols
        )

    def star(self) -> "QuatMatrix":
        """Quaternionic conjugate transpose."""
        return QuatMatrix(
            tuple(
                tuple(self.rows[i][j].conj() for i in range(self.nrows))
                for j in range(self.ncols)
            ),
            self.nrows,
        )

    def is_identity(self) -> bool:
        return self.is_square() and self == QuatMatrix.identity(self.nrows)

    def is_zero(self) -> bool:
        return all(q.is_zero() for row in self.rows for q in row)

    def row_is_zero(self, i: int) -> bool:
        return all(q.is_zero() for q in self.rows[i])

    def with_row_scaled(self, i: int, x: Union[int, Fraction]) -> "QuatMatrix":
        rows = list(self.rows)
        rows[i] = tuple(q.scale(x) for q in rows[i])
        return QuatMatrix(tuple(rows), self.ncols)

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "QuatMatrix":
        return QuatMatrix(
            tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols)
        )

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(q) for q in row) + "]" for row in self.rows)


def quat_column_echelon(M: QuatMatrix) -> tuple[QuatMatrix, list[int]]:
    """
    Reduced column echelon form of M under right multiplication by GL(H).

    Rows are scanned top to bottom; each pivot is normalized to 1 by
    right-multiplying its column by the pivot's inverse, and every other entry
    in the pivot row is cleared with column operations col_j -= col_p * x.

    Returns:
        (echelon matrix with the same number of columns, pivot row indices)
    """
    cols = [list(M.column(j)) for j in range(M.ncols)]
    pivot_rows: list[int] = []
    c = 0
    for r in range(M.nrows):
        if c == len(cols):
            break
        j = next((j for j in range(c, len(cols)) if not cols[j][r].is_zero()), None)
        if j is None:
            continue
        cols[c], cols[j] = cols[j], cols[c]
        inv = cols[c][r].inverse()
        cols[c] = [x * inv for x in cols[c]]
        for t in range(len(cols)):
            if t == c or cols[t][r].is_zero():
                continue
            factor = cols[t][r]
            cols[t] = [x - y * factor for x, y in zip(cols[t], cols[c])]
        pivot_rows.append(r)
        c += 1
    if not cols:
        return M, pivot_rows
    return QuatMatrix.from_columns(cols), pivot_rows


def quat_rank(M: QuatMatrix) -> int:
    """
    Rank over H of the column space of M (a right H-vector space).

    Example:
        >>> quat_rank(QuatMatrix.from_rows([[QUAT_J], [QUAT_K]]))
        1
    """
    if M.nrows == 0 or M.ncols == 0:
        return 0
    _, pivots = quat_column_echelon(M)
    return len(pivots)
