"""
Quaternionic Grassmannians Gr_k(H^n) and the orbit map of Sp(n).

A point is the column space of a full-rank n x k quaternion matrix modulo
right multiplication by GL(k, H). The sets used by the cover of Gr_k(H^n):

- X_{j,k} (1 <= j <= k+1): planes containing the basis vector e_j;
- Y_{j,k} (1 <= j <= n): planes with row j zero in every representative.

A plane outside X_{j,k} keeps rank k when row j is deleted, which is what
lets grass_retract shrink row j to zero.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from alcove_cat.errors import DimensionMismatchError, PreconditionError
from alcove_cat.exact_core import (
    QUAT_ONE,
    QUAT_ZERO,
    QuatMatrix,
    QuatRat,
    quat_column_echelon,
    quat_rank,
)
from alcove_cat.realizations.quaternionic import in_vertex_orbit, is_symplectic

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GrassPoint:
    """
    A k-plane in H^n given by a representative; equality compares the
    canonical column echelon form.

    Example:
        >>> col = QuatMatrix.from_rows([[QUAT_J], [QUAT_K]])
        >>> print(GrassPoint(col).canonical)
        [1]
        [i]
    """

    rep: QuatMatrix

    def __post_init__(self) -> None:
        if quat_rank(self.rep) != self.rep.ncols:
            raise PreconditionError(
                f"Representative of shape {self.rep.shape} does not have full column rank"
            )

    @property
    def n(self) -> int:
        return self.rep.nrows

    @property
    def k(self) -> int:
        return self.rep.ncols

    @cached_property
    def canonical(self) -> QuatMatrix:
        echelon, _ = quat_column_echelon(self.rep)
        return echelon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassPoint):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __repr__(self) -> str:
        return f"GrassPoint(n={self.n}, k={self.k})"


def grass_canonical(x: GrassPoint) -> QuatMatrix:
    return x.canonical


def coordinate_plane(n: int, k: int) -> GrassPoint:
    """The span of e_1, ..., e_k."""
    return GrassPoint(
        QuatMatrix.from_rows(
            [[QUAT_ONE if i == j else QUAT_ZERO for j in range(k)] for i in range(n)]
        )
    )


def _check_dims(k: int, x: GrassPoint) -> None:
    if x.k != k:
        raise DimensionMismatchError(f"Point of Gr_{x.k}(H^{x.n}) used as a {k}-plane")


def in_X(j: int, k: int, x: GrassPoint) -> bool:
    """Whether x contains e_j, i.e. deleting row j drops the rank."""
    _check_dims(k, x)
    if not 1 <= j <= min(k + 1, x.n):
        raise PreconditionError(f"X_{{{j},{k}}} needs 1 <= j <= {min(k + 1, x.n)}")
    return quat_rank(x.rep.delete_row(j - 1)) < k


def in_Y(j: int, k: int, x: GrassPoint) -> bool:
    """Whether row j of x vanishes."""
    _check_dims(k, x)
    if not 1 <= j <= x.n:
        raise PreconditionError(f"Y_{{{j},{k}}} needs 1 <= j <= {x.n}")
    return x.canonical.row_is_zero(j - 1)


def covering_indices(k: int, x: GrassPoint) -> list[int]:
    """The j in 1..k+1 with x outside X_{j,k}; never empty for k < n."""
    return [j for j in range(1, min(k + 1, x.n) + 1) if not in_X(j, k, x)]


def grass_retract(j: int, k: int, x: GrassPoint, s: Union[Fraction, int]) -> GrassPoint:
    """
    Scale row j of x by (1 - s); lands in Y_{j,k} at s = 1.

    Raises:
        PreconditionError: If x lies in X_{j,k} or s is outside [0, 1]
    """
    _check_dims(k, x)
    s = Fraction(s)
    if not 0 <= s <= 1:
        raise PreconditionError(f"Retraction parameter {s} outside [0, 1]")
    if not 1 <= j <= x.n:
        raise PreconditionError(f"Row index {j} outside 1..{x.n}")
    if quat_rank(x.rep.delete_row(j - 1)) < k:
        raise PreconditionError(f"Plane contains e_{j}; scaling row {j} would drop the rank")
    return GrassPoint(x.rep.with_row_scaled(j - 1, 1 - s))


def plane_dimension(n: int, k: int) -> int:
    """d_k: k when k <= n - k, else n - k."""
    return k if k <= n - k else n - k


def tau_k(g: QuatMatrix, k: int) -> GrassPoint:
    """
    Plane of the orbit element g exp(v_k) g*: the first k columns of g when
    d_k = k, the last n - k otherwise.

    Raises:
        PreconditionError: If g is not symplectic or k is not in 1..n-1
    """
    n = g.nrows
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"tau_k needs 1 <= k <= {n - 1}, got {k}")
    if not is_symplectic(g):
        raise PreconditionError("tau_k needs a symplectic matrix")
    if plane_dimension(n, k) == k:
        return GrassPoint(g.select_columns(range(k)))
    return GrassPoint(g.select_columns(range(k, n)))


def orbit_plane(x: QuatMatrix, k: int) -> GrassPoint:
    """
    tau_k evaluated on an orbit element: the -1-eigenspace of x when d_k = k,
    the +1-eigenspace otherwise, as the column space of (I -/+ x)/2.

    Raises:
        PreconditionError: If x is not in O_k
    """
    n = x.nrows
    if not 1 <= k <= n - 1 or not in_vertex_orbit(x, k):
        raise PreconditionError(f"Matrix is not in the conjugacy class O_{k} of Sp({n})")
    d = plane_dimension(n, k)
    sign = -1 if d == k else 1
    projector = (QuatMatrix.identity(n) + x.scale(sign)).scale(Fraction(1, 2))
    echelon, pivots = quat_column_echelon(projector)
    if len(pivots) != d:
        raise PreconditionError(f"Eigenspace of dimension {len(pivots)}, expected {d}")
    return GrassPoint(echelon.select_columns(range(d)))


def random_grass_point(
    n: int, k: int, rng: random.Random, bound: int = 2, special_rate: float = 0.2
) -> GrassPoint:
    """
    Seeded rational point of Gr_k(H^n).

    With probability ``special_rate`` the first column is replaced by a basis
    vector e_j, j <= k+1, so the sample also hits the sets X_{j,k}.
    """
    if not 1 <= k <= n:
        raise PreconditionError(f"Gr_{k}(H^{n}) needs 1 <= k <= n")
    special = rng.random() < special_rate
    j = rng.randrange(min(k + 1, n))
    while True:
        cols = [
            [QuatRat(*(rng.randint(-bound, bound) for _ in range(4))) for _ in range(n)]
            for _ in range(k)
        ]
        if special:
            cols[0] = [QUAT_ONE if i == j else QUAT_ZERO for i in range(n)]
        rep = QuatMatrix.from_columns(cols)
        if quat_rank(rep) == k:
            return GrassPoint(rep)
