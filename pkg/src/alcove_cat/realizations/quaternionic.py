"""
Sp(n) realized as quaternionic n x n matrices with g g* = I.

Quaternions are split as q = A + B*j with complex A, B, and a quaternion
matrix maps to the complex 2n x 2n matrix phi(A + Bj) = (A B; -conj(B) conj(A)).
The reduced norm is det(phi(M)).

Everything is exact except the polar decomposition, which runs on float
arrays of shape (rows, cols, 4) holding the (1, i, j, k) components.
"""

import logging
import random
from collections.abc import Sequence
from fractions import Fraction
from typing import Optional

import numpy as np

from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import (
    ConvergenceError,
    DimensionMismatchError,
    InexactAngleError,
    PreconditionError,
)
from alcove_cat.exact_core import (
    CRat,
    QUAT_I,
    QUAT_ONE,
    QUAT_ZERO,
    QuatMatrix,
    QuatRat,
    complex_determinant,
)

logger = logging.getLogger(__name__)

ComplexMatrix = tuple[tuple[CRat, ...], ...]

# Rational points (c, s) of the unit circle used for real Givens rotations.
_PYTHAGOREAN = (
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
)


# ---------------------------------------------------------------------------
# phi, nu, membership
# ---------------------------------------------------------------------------


def phi_embed(M: QuatMatrix) -> ComplexMatrix:
    """
    Complex image phi(M) of an n x m quaternion matrix, of size 2n x 2m.

    Example:
        >>> phi_embed(QuatMatrix.identity(1)) == ((CRat(1), CRat(0)), (CRat(0), CRat(1)))
        True
    """
    n, m = M.shape
    out = [[CRat() for _ in range(2 * m)] for _ in range(2 * n)]
    for r, row in enumerate(M.rows):
        for c, q in enumerate(row):
            a, b = q.complex_parts()
            out[r][c] = a
            out[r][m + c] = b
            out[n + r][c] = -b.conj()
            out[n + r][m + c] = a.conj()
    return tuple(tuple(row) for row in out)


def complex_matmul(X: ComplexMatrix, Y: ComplexMatrix) -> ComplexMatrix:
    if X and len(X[0]) != len(Y):
        raise DimensionMismatchError(
            f"Cannot multiply complex matrices with {len(X[0])} columns and {len(Y)} rows"
        )
    ncols = len(Y[0]) if Y else 0
    out = []
    for row in X:
        out_row = []
        for j in range(ncols):
            acc = CRat()
            for t, x in enumerate(row):
                if not x.is_zero():
                    acc = acc + x * Y[t][j]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def _require_square(M: QuatMatrix, what: str) -> None:
    if not M.is_square():
        raise DimensionMismatchError(f"{what} needs a square matrix, got {M.shape}")


def reduced_norm(M: QuatMatrix) -> CRat:
    """nu(M) = det phi(M); real for every quaternion matrix."""
    _require_square(M, "Reduced norm")
    if M.nrows == 0:
        return CRat(1)
    return complex_determinant(phi_embed(M))


def phi_trace(M: QuatMatrix) -> Fraction:
    """Trace of phi(M), which is 2 * sum of the real parts of the diagonal."""
    _require_square(M, "Trace")
    total = CRat()
    for i, row in enumerate(phi_embed(M)):
        total = total + row[i]
    return total.re


def is_symplectic(g: QuatMatrix) -> bool:
    """g g* = I and nu(g) = 1, both exactly."""
    _require_square(g, "Symplectic test")
    if not (g @ g.star()).is_identity():
        return False
    return reduced_norm(g) == CRat(1)


def is_involution(g: QuatMatrix) -> bool:
    return (g @ g).is_identity()


# ---------------------------------------------------------------------------
# Torus and vertices
# ---------------------------------------------------------------------------


def sp_exp_vertex(n: int, k: int) -> QuatMatrix:
    """exp v_k = diag(-I_k, I_{n-k})."""
    if not 0 <= k <= n:
        raise PreconditionError(f"Vertex index {k} outside 0..{n}")
    return QuatMatrix.diagonal([-QUAT_ONE] * k + [QUAT_ONE] * (n - k))


def _quarter_turn(h: Fraction) -> QuatRat:
    """e^{2 pi i h} for h with 4h integral."""
    if (4 * h).denominator != 1:
        raise InexactAngleError(f"e^(2 pi i * {h}) is not rational")
    return (QUAT_ONE, QUAT_I, -QUAT_ONE, -QUAT_I)[int(4 * h) % 4]


def sp_exp_torus(H: Sequence[Fraction]) -> QuatMatrix:
    """
    exp of a torus point of Sp(n): diag(e^{2 pi i H_j}).

    Raises:
        InexactAngleError: Unless every 4 H_j is an integer
    """
    return QuatMatrix.diagonal([_quarter_turn(Fraction(h)) for h in H])


def orbit_point(g: QuatMatrix, k: int) -> QuatMatrix:
    """The conjugate g exp(v_k) g* of the vertex element."""
    _require_square(g, "Conjugation")
    return g @ sp_exp_vertex(g.nrows, k) @ g.star()


def in_vertex_orbit(x: QuatMatrix, k: int) -> bool:
    """
    Whether x lies in O_k: a symplectic involution whose -1-eigenspace has
    quaternionic dimension k, read off from trace(phi(x)) = 2(n - 2k).
    """
    n = x.nrows
    return (
        0 <= k <= n
        and is_symplectic(x)
        and is_involution(x)
        and phi_trace(x) == 2 * (n - 2 * k)
    )


# ---------------------------------------------------------------------------
# Seeded exact witnesses
# ---------------------------------------------------------------------------


def random_unit_quaternion(rng: random.Random, bound: int = 3) -> QuatRat:
    """p^2 / |p|^2 for a random nonzero integer quaternion p."""
    while True:
        p = QuatRat(*(rng.randint(-bound, bound) for _ in range(4)))
        if not p.is_zero():
            return (p * p).scale(1 / p.norm2())


def _diag_unit(n: int, i: int, q: QuatRat) -> QuatMatrix:
    entries = [QUAT_ONE] * n
    entries[i] = q
    return QuatMatrix.diagonal(entries)


def _givens(n: int, i: int, j: int, c: Fraction, s: Fraction) -> QuatMatrix:
    rows = [[QUAT_ONE if a == b else QUAT_ZERO for b in range(n)] for a in range(n)]
    rows[i][i], rows[i][j] = QuatRat(c), QuatRat(-s)
    rows[j][i], rows[j][j] = QuatRat(s), QuatRat(c)
    return QuatMatrix.from_rows(rows)


def transposition(n: int, i: int, j: int) -> QuatMatrix:
    """Permutation matrix swapping e_i and e_j (0-based)."""
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    return QuatMatrix.from_rows(
        [[QUAT_ONE if perm[a] == b else QUAT_ZERO for b in range(n)] for a in range(n)]
    )


def random_symplectic(n: int, rng: random.Random, steps: Optional[int] = None) -> QuatMatrix:
    """
    Exact pseudo-random element of Sp(n).

    A product of diagonal unit quaternions, real Givens rotations at rational
    points of the circle and transpositions; each factor is symplectic.
    """
    if n < 1:
        raise PreconditionError("Sp(n) needs n >= 1")
    g = QuatMatrix.identity(n)
    for _ in range(steps if steps is not None else 3 * n):
        g = g @ _diag_unit(n, rng.randrange(n), random_unit_quaternion(rng))
        if n > 1:
            i, j = rng.sample(range(n), 2)
            c, s = rng.choice(_PYTHAGOREAN)
            if rng.random() < 0.5:
                c, s = s, -c
            g = g @ _givens(n, i, j, c, s)
            if rng.random() < 0.3:
                g = g @ transposition(n, i, j)
    return g


def embed_fixing(h: QuatMatrix, j: int) -> QuatMatrix:
    """
    Insert an (n-1) x (n-1) matrix around row and column j (1-based) of an
    n x n matrix whose row and column j are e_j.
    """
    _require_square(h, "Embedding")
    n = h.nrows + 1
    if not 1 <= j <= n:
        raise PreconditionError(f"Index {j} outside 1..{n}")
    rest = [t for t in range(n) if t != j - 1]
    rows = [[QUAT_ZERO] * n for _ in range(n)]
    rows[j - 1][j - 1] = QUAT_ONE
    for a, ra in enumerate(rest):
        for b, rb in enumerate(rest):
            rows[ra][rb] = h.rows[a][b]
    return QuatMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# Block structure of orbit elements with a plane in Y_{j,k}
# ---------------------------------------------------------------------------


def block_structure_check(x: QuatMatrix, j: int, k: int) -> bool:
    """
    Whether the orbit element x has row and column j equal to e_j and a
    complementary (n-1) x (n-1) block in Sp(n-1) conjugate to exp v_{k,n-1}.

    For x in O_k with 1 <= k <= n/2 this holds exactly when the plane of x
    lies in Y_{j,k}. Conjugacy of the complementary block is decided by
    the involution property together with the trace of its phi-image.

    Raises:
        PreconditionError: If x is not in O_k or j, k are out of range
    """
    _require_square(x, "Block structure check")
    n = x.nrows
    if n < 2 or not 1 <= j <= n:
        raise PreconditionError(f"Row index {j} outside 1..{n} (n >= 2 required)")
    if not 1 <= 2 * k <= n:
        raise PreconditionError(f"Block structure needs 1 <= k <= n/2, got k={k}, n={n}")
    if not in_vertex_orbit(x, k):
        raise PreconditionError(f"Matrix is not in the conjugacy class O_{k} of Sp({n})")

    i = j - 1
    for t in range(n):
        expected = QUAT_ONE if t == i else QUAT_ZERO
        if x.rows[i][t] != expected or x.rows[t][i] != expected:
            logger.debug(f"Row/column {j} differs from e_{j} at position {t + 1}")
            return False
    rest = [t for t in range(n) if t != i]
    block = x.block(rest, rest)
    return (
        is_symplectic(block)
        and is_involution(block)
        and phi_trace(block) == 2 * (n - 1 - 2 * k)
    )


# ---------------------------------------------------------------------------
# Float quaternion arrays and the polar decomposition
# ---------------------------------------------------------------------------


def quat_to_array(M: QuatMatrix) -> np.ndarray:
    """Float array of shape (rows, cols, 4)."""
    return np.array(
        [[[float(c) for c in q.components()] for q in row] for row in M.rows],
        dtype=float,
    ).reshape(M.nrows, M.ncols, 4)


def phi_float(arr: np.ndarray) -> np.ndarray:
    """phi on a float quaternion array of shape (n, m, 4)."""
    A = arr[..., 0] + 1j * arr[..., 1]
    B = arr[..., 2] + 1j * arr[..., 3]
    return np.block([[A, B], [-B.conj(), A.conj()]])


def from_phi_float(Z: np.ndarray) -> np.ndarray:
    """Inverse of phi_float, reading the top block row."""
    n, m = Z.shape[0] // 2, Z.shape[1] // 2
    A, B = Z[:n, :m], Z[:n, m:]
    return np.stack([A.real, A.imag, B.real, B.imag], axis=-1)


def float_quat_matmul(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return from_phi_float(phi_float(X) @ phi_float(Y))


def float_star(X: np.ndarray) -> np.ndarray:
    out = np.transpose(X, (1, 0, 2)).copy()
    out[..., 1:] *= -1
    return out


def polar_sp_part(
    g: np.ndarray, config: Optional[AlcoveCatConfig] = None
) -> np.ndarray:
    """
    Compact factor kappa(g) = g (g* g)^(-1/2) of an invertible quaternion matrix.

    Newton iteration X <- (X + X^(-*)) / 2 on phi(g); the iterates stay in
    the image of phi, so the limit is phi(kappa(g)).

    Raises:
        PreconditionError: If g is singular
        ConvergenceError: If kappa kappa* is not within tolerance of I in time
    """
    cfg = config or default_config()
    g = np.asarray(g, dtype=float)
    if g.ndim != 3 or g.shape[0] != g.shape[1] or g.shape[2] != 4:
        raise DimensionMismatchError(f"Expected a square quaternion array, got shape {g.shape}")
    X = phi_float(g)
    eye = np.eye(X.shape[0])
    for iteration in range(1, cfg.polar_max_iterations + 1):
        try:
            inv_h = np.linalg.inv(X).conj().T
        except np.linalg.LinAlgError as e:
            raise PreconditionError(f"Polar decomposition of a singular matrix: {e}") from e
        X = (X + inv_h) / 2
        residual = float(np.linalg.norm(X.conj().T @ X - eye))
        if residual <= cfg.polar_tolerance:
            logger.debug(f"Polar iteration converged after {iteration} steps")
            return from_phi_float(X)
    raise ConvergenceError(
        f"Polar iteration did not converge in {cfg.polar_max_iterations} steps "
        f"(residual {residual:.3e})"
    )
