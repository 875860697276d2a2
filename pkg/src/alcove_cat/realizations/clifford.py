"""
Clifford algebra C_m(R) with e_i e_i = -1, Spin(m) and its double cover of SO(m).

Elements are sparse maps from sorted index tuples (blades) to scalars. The
scalars are exact fractions, except in float mode where trigonometric values
at irrational angles are needed.
"""

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from alcove_cat.affine_alcove import AlcoveGeometry
from alcove_cat.errors import (
    DimensionMismatchError,
    InexactAngleError,
    PreconditionError,
)
from alcove_cat.exact_core import QMat, QVec

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, float]
Blade = tuple[int, ...]
SOMatrix = Union[QMat, np.ndarray]

DEFAULT_TOLERANCE = 1e-12


@lru_cache(maxsize=65_536)
def blade_product(a: Blade, b: Blade) -> tuple[int, Blade]:
    """
    Product of two basis blades as (sign, blade).

    Each index of b is moved left past the larger indices already present;
    a repeated index cancels with e_x e_x = -1.

    Example:
        >>> blade_product((1, 2), (1, 2))
        (-1, ())
    """
    result = list(a)
    sign = 1
    for x in b:
        larger = sum(1 for y in result if y > x)
        if larger % 2:
            sign = -sign
        if x in result:
            result.remove(x)
            sign = -sign
        else:
            pos = len(result) - larger
            result.insert(pos, x)
    return sign, tuple(result)


def _reversion_sign(grade: int) -> int:
    """Sign of (x1...xk)* = (-1)^k xk...x1 relative to x1...xk."""
    return (-1) ** grade * (-1) ** (grade * (grade - 1) // 2)


@dataclass(frozen=True)
class CliffordElement:
    """
    Element of C_m(R).

    Only nonzero coefficients are stored, keyed by ascending index tuples
    (1-based). ``terms`` is kept sorted so equal elements compare equal.

    Example:
        >>> e1, e2 = CliffordElement.vector(2, 1), CliffordElement.vector(2, 2)
        >>> str(e1 * e2), str(e2 * e1)
        ('e1e2', '-e1e2')
    """

    m: int
    terms: tuple[tuple[Blade, Scalar], ...]

    @classmethod
    def from_dict(cls, m: int, coeffs: Mapping[Blade, Scalar]) -> "CliffordElement":
        cleaned = {}
        for blade, c in coeffs.items():
            if any(not 1 <= i <= m for i in blade):
                raise DimensionMismatchError(f"Blade {blade} outside 1..{m}")
            if list(blade) != sorted(set(blade)):
                raise ValueError(f"Blade indices must be strictly ascending: {blade}")
            if c != 0:
                cleaned[blade] = c
        return cls(m, tuple(sorted(cleaned.items(), key=lambda kv: (len(kv[0]), kv[0]))))

    @classmethod
    def scalar(cls, m: int, c: Union[int, Scalar] = 1) -> "CliffordElement":
        value: Scalar = c if isinstance(c, float) else Fraction(c)
        return cls.from_dict(m, {(): value})

    @classmethod
    def vector(cls, m: int, i: int, c: Union[int, Scalar] = 1) -> "CliffordElement":
        value: Scalar = c if isinstance(c, float) else Fraction(c)
        return cls.from_dict(m, {(i,): value})

    @classmethod
    def blade(cls, m: int, indices: Iterable[int], c: Union[int, Scalar] = 1) -> "CliffordElement":
        """The product e_{i1} e_{i2} ... of the given indices, in that order."""
        out = cls.scalar(m, c)
        for i in indices:
            out = out * cls.vector(m, i)
        return out

    @property
    def coeffs(self) -> dict[Blade, Scalar]:
        return dict(self.terms)

    def coefficient(self, blade: Blade) -> Scalar:
        return self.coeffs.get(blade, Fraction(0))

    def is_float(self) -> bool:
        return any(isinstance(c, float) for _, c in self.terms)

    def is_even(self) -> bool:
        return all(len(b) % 2 == 0 for b, _ in self.terms)

    def is_scalar(self) -> bool:
        return all(len(b) == 0 for b, _ in self.terms)

    def is_vector(self, tol: float = DEFAULT_TOLERANCE) -> bool:
        return all(
            len(b) == 1 or (isinstance(c, float) and abs(c) <= tol) for b, c in self.terms
        )

    def vector_coefficients(self) -> list[Scalar]:
        coeffs = self.coeffs
        return [coeffs.get((i,), Fraction(0)) for i in range(1, self.m + 1)]

    def _check(self, other: "CliffordElement") -> None:
        if self.m != other.m:
            raise DimensionMismatchError(
                f"Clifford elements of different ambient dimension: {self.m} vs {other.m}"
            )

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._check(other)
        acc: dict[Blade, Scalar] = dict(self.terms)
        for blade, c in other.terms:
            acc[blade] = acc.get(blade, Fraction(0)) + c
        return CliffordElement.from_dict(self.m, acc)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.m, tuple((b, -c) for b, c in self.terms))

    def __sub__(self, other: "CliffordElement") -> "CliffordElement":
        return self + (-other)

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        return clifford_mul(self, other)

    def scale(self, c: Scalar) -> "CliffordElement":
        return CliffordElement.from_dict(self.m, {b: c * x for b, x in self.terms})

    def conj(self) -> "CliffordElement":
        return clifford_conj(self)

    def isclose(self, other: "CliffordElement", tol: float = DEFAULT_TOLERANCE) -> bool:
        """Coefficient-wise comparison with an absolute tolerance."""
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return all(
            abs(float(a.get(k, 0)) - float(b.get(k, 0))) <= tol for k in set(a) | set(b)
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for blade, c in self.terms:
            mono = "".join(f"e{i}" for i in blade)
            neg = c < 0
            mag = abs(c)
            if mono and mag == 1:
                text = mono
            elif mono:
                text = f"{mag} {mono}"
            else:
                text = str(mag)
            parts.append(("-" if neg else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """
    Product in C_m(R): bilinear extension of the blade sign rule.

    Raises:
        DimensionMismatchError: If the ambient dimensions differ
    """
    a._check(b)
    acc: dict[Blade, Scalar] = {}
    for ba, ca in a.terms:
        for bb, cb in b.terms:
            sign, blade = blade_product(ba, bb)
            acc[blade] = acc.get(blade, Fraction(0)) + sign * ca * cb
    return CliffordElement.from_dict(a.m, acc)


def clifford_conj(a: CliffordElement) -> CliffordElement:
    """Anti-involution with (x1 x2 ... xk)* = (-1)^k xk ... x2 x1."""
    return CliffordElement(
        a.m, tuple((b, _reversion_sign(len(b)) * c) for b, c in a.terms)
    )


def is_spin(g: CliffordElement, tol: float = DEFAULT_TOLERANCE) -> bool:
    """
    Whether g lies in Spin(m): even, g g* = 1, and g e_i g* a vector for all i.

    Exact elements are tested exactly; float elements within ``tol``.
    """
    if not g.is_even():
        return False
    one = CliffordElement.scalar(g.m)
    norm = g * g.conj()
    if g.is_float():
        if not norm.isclose(one, tol):
            return False
    elif norm != one:
        return False
    for i in range(1, g.m + 1):
        image = g * CliffordElement.vector(g.m, i) * g.conj()
        if not image.is_vector(tol if g.is_float() else 0.0):
            return False
    return True


def vector_action(g: CliffordElement) -> SOMatrix:
    """
    Matrix of x -> g x g* on R^m, the double cover Spin(m) -> SO(m).

    Columns are the coordinates of g e_i g*. Exact elements give a QMat,
    float elements a numpy array.

    Raises:
        PreconditionError: If g is not in Spin(m)
    """
    if not is_spin(g):
        raise PreconditionError(f"{g} is not an element of Spin({g.m})")
    columns = [
        (g * CliffordElement.vector(g.m, i) * g.conj()).vector_coefficients()
        for i in range(1, g.m + 1)
    ]
    if g.is_float():
        return np.array([[float(c) for c in col] for col in columns]).T
    return QMat.from_columns([tuple(Fraction(c) for c in col) for col in columns])


def _half_turn_trig(turns: Fraction) -> tuple[Fraction, Fraction]:
    """(cos(pi t), sin(pi t)) for t with 2t integral."""
    quarter = int(turns * 2) % 4
    return {
        0: (Fraction(1), Fraction(0)),
        1: (Fraction(0), Fraction(1)),
        2: (Fraction(-1), Fraction(0)),
        3: (Fraction(0), Fraction(-1)),
    }[quarter]


def spin_rotor(c: Scalar, s: Scalar, k: int, m: int) -> CliffordElement:
    """c - s e_{2k-1} e_{2k} for an explicit point (c, s) of the unit circle."""
    if 2 * k > m:
        raise DimensionMismatchError(f"Plane {k} needs m >= {2 * k}, got {m}")
    return CliffordElement.from_dict(m, {(): c, (2 * k - 1, 2 * k): -s})


def spin_exp_E(
    turns: Union[Fraction, int, float], k: int, m: int, exact: bool = True
) -> CliffordElement:
    """
    exp(theta E_k) = cos(theta/2) - sin(theta/2) e_{2k-1} e_{2k} with
    theta = 2 pi * turns.

    Exact mode needs 2 * turns integral (cos and sin of the half angle in
    {0, 1, -1}); float mode accepts any angle.

    Raises:
        InexactAngleError: In exact mode at an angle with irrational values
    """
    if exact:
        t = Fraction(turns)
        if (2 * t).denominator != 1:
            raise InexactAngleError(
                f"exp({t} turns * E_{k}) is not rational; use float mode"
            )
        c, s = _half_turn_trig(t)
        return spin_rotor(c, s, k, m)
    half = math.pi * float(turns)
    return spin_rotor(math.cos(half), math.sin(half), k, m)


def spin_torus_exp(
    H: Sequence[Union[Fraction, float]], m: int, exact: bool = True
) -> CliffordElement:
    """
    exp of the torus point sum_j H_j (2 pi E_j): the product over j of
    spin_exp_E(H_j, j).
    """
    if 2 * len(H) > m:
        raise DimensionMismatchError(f"Torus of rank {len(H)} does not fit in Spin({m})")
    out = CliffordElement.scalar(m, 1.0 if not exact else 1)
    for j, h in enumerate(H, start=1):
        out = out * spin_exp_E(h, j, m, exact=exact)
    return out


def spin_vertex_element(geo: AlcoveGeometry, k: int) -> CliffordElement:
    """
    exp v_k in Spin(2n+1) (family B) or Spin(2n) (family D).

    The vertex is taken from the given alcove geometry of B_n / D_n, so for example
    v_1 exponentiates to -1 and, for generic k,
    exp v_k = (-1)^k e1e2 e3e4 ... e_{2k-1}e_{2k}.
    """
    family = geo.rs.lie_type.family
    if family not in ("B", "D"):
        raise PreconditionError(f"Spin vertex elements exist for families B and D, not {family}")
    m = 2 * geo.n + 1 if family == "B" else 2 * geo.n
    return spin_torus_exp(geo.vertex(k), m)


def vertex_block_matrix(k: int, m: int) -> QMat:
    """diag(-I_{2k}, I_{m-2k})."""
    return QMat.diagonal([-1] * (2 * k) + [1] * (m - 2 * k))


def so_block_rotation(
    turns: Union[Fraction, int, float], k: int, m: int, exact: bool = True
) -> SOMatrix:
    """
    exp(theta E_k) in SO(m): rotation by theta = 2 pi * turns in the
    (e_{2k-1}, e_{2k}) plane, with entry (2k-1, 2k) equal to sin(theta).

    Exact mode needs 4 * turns integral.
    """
    i, j = 2 * k - 2, 2 * k - 1
    if exact:
        t = Fraction(turns)
        if (4 * t).denominator != 1:
            raise InexactAngleError(f"Rotation by {t} turns is not rational")
        c, s = _half_turn_trig(2 * t)
        rows = [[Fraction(int(a == b)) for b in range(m)] for a in range(m)]
        rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, s, -s, c
        return QMat.from_rows(rows)
    theta = 2 * math.pi * float(turns)
    out = np.eye(m)
    out[i, i], out[i, j], out[j, i], out[j, j] = (
        math.cos(theta),
        math.sin(theta),
        -math.sin(theta),
        math.cos(theta),
    )
    return out


def as_float_matrix(mat: SOMatrix) -> np.ndarray:
    if isinstance(mat, QMat):
        return np.array([[float(x) for x in row] for row in mat.rows])
    return np.asarray(mat, dtype=float)


def is_special_orthogonal(mat: SOMatrix, tol: float = DEFAULT_TOLERANCE) -> bool:
    """M M^T = I and det M = 1, exactly for QMat input."""
    if isinstance(mat, QMat):
        return (mat @ mat.transpose()).is_identity() and mat.determinant() == 1
    arr = np.asarray(mat, dtype=float)
    return bool(
        np.allclose(arr @ arr.T, np.eye(arr.shape[0]), atol=tol)
        and abs(np.linalg.det(arr) - 1.0) <= tol * arr.shape[0]
    )


def negated_first_coordinate(H: QVec) -> QVec:
    """Image of a torus point under the Weyl reflection in epsilon_1."""
    return (-H[0],) + tuple(H[1:])
