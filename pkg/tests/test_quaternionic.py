"""
Tests for the quaternionic model of Sp(n).

Tests cover:
- The complex embedding phi and the reduced norm
- Symplectic membership and vertex elements
- Seeded random symplectic matrices and orbit membership
- The block-structure test on orbit elements
- Float quaternion arrays and the polar decomposition
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from alcove_cat.config import AlcoveCatConfig
from alcove_cat.errors import ConvergenceError, InexactAngleError, PreconditionError
from alcove_cat.exact_core import (
    QUAT_I,
    QUAT_J,
    QUAT_ONE,
    CRat,
    QuatMatrix,
    QuatRat,
)
from alcove_cat.realizations.quaternionic import (
    block_structure_check,
    embed_fixing,
    float_quat_matmul,
    float_star,
    in_vertex_orbit,
    is_symplectic,
    orbit_point,
    phi_embed,
    phi_trace,
    polar_sp_part,
    quat_to_array,
    random_symplectic,
    reduced_norm,
    sp_exp_torus,
    sp_exp_vertex,
)


def _diag(*entries: QuatRat) -> QuatMatrix:
    return QuatMatrix.diagonal(list(entries))


class TestPhiEmbedding:
    """Tests for phi_embed() and reduced_norm()."""

    def test_identity(self) -> None:
        """Test phi(I_2) = I_4."""
        image = phi_embed(QuatMatrix.identity(2))
        for r in range(4):
            for c in range(4):
                assert image[r][c] == CRat(1 if r == c else 0)

    def test_j(self) -> None:
        """Test phi(j) = ((0, 1), (-1, 0))."""
        assert phi_embed(QuatMatrix.from_rows([[QUAT_J]])) == (
            (CRat(0), CRat(1)),
            (CRat(-1), CRat(0)),
        )

    def test_i(self) -> None:
        """Test phi(i) = diag(i, -i)."""
        assert phi_embed(QuatMatrix.from_rows([[QUAT_I]])) == (
            (CRat(0, 1), CRat(0)),
            (CRat(0), CRat(0, -1)),
        )

    def test_reduced_norm(self) -> None:
        """Test nu(I) = 1, nu(j) = 1 and nu(diag(q, 1)) = |q|^2."""
        assert reduced_norm(QuatMatrix.identity(3)) == CRat(1)
        assert reduced_norm(QuatMatrix.from_rows([[QUAT_J]])) == CRat(1)
        q = QuatRat(1, 2, 0, 1)
        assert reduced_norm(_diag(q, QUAT_ONE)) == CRat(6)

    def test_trace(self) -> None:
        """Test trace phi(diag(-1, 1, 1)) = 2."""
        assert phi_trace(sp_exp_vertex(3, 1)) == 2


class TestSymplectic:
    """Tests for is_symplectic() and the vertex elements."""

    def test_examples(self) -> None:
        """Test I, diag(-1, 1) and diag(2, 1)."""
        assert is_symplectic(QuatMatrix.identity(2))
        assert is_symplectic(_diag(-QUAT_ONE, QUAT_ONE))
        assert not is_symplectic(_diag(QuatRat(2), QUAT_ONE))

    def test_vertex_elements(self) -> None:
        """Test exp v_0 = I, exp v_n = -I and exp v_1 = diag(-1, 1) for n = 2."""
        assert sp_exp_vertex(2, 0).is_identity()
        assert sp_exp_vertex(2, 2) == _diag(-QUAT_ONE, -QUAT_ONE)
        assert sp_exp_vertex(2, 1) == _diag(-QUAT_ONE, QUAT_ONE)

    def test_vertex_index(self) -> None:
        """Test that k > n is rejected."""
        with pytest.raises(PreconditionError):
            sp_exp_vertex(2, 3)

    def test_torus_exp(self) -> None:
        """Test exp of (1/4, 1/2) is diag(i, -1)."""
        assert sp_exp_torus([Fraction(1, 4), Fraction(1, 2)]) == _diag(QUAT_I, -QUAT_ONE)

    def test_torus_exp_inexact(self) -> None:
        """Test that a third of a turn has no rational exponential."""
        with pytest.raises(InexactAngleError):
            sp_exp_torus([Fraction(1, 3)])

    def test_random_symplectic(self, rng: random.Random) -> None:
        """Test that seeded random elements are symplectic and reproducible."""
        g = random_symplectic(3, rng)
        assert is_symplectic(g)
        assert random_symplectic(3, random.Random(5)) == random_symplectic(3, random.Random(5))


class TestOrbits:
    """Tests for orbit_point() and in_vertex_orbit()."""

    def test_conjugates_stay_in_orbit(self, rng: random.Random) -> None:
        """Test that g exp(v_k) g* lies in O_k and no other class."""
        for k in range(4):
            x = orbit_point(random_symplectic(3, rng), k)
            assert in_vertex_orbit(x, k)
            assert not any(in_vertex_orbit(x, other) for other in range(4) if other != k)

    def test_embed_fixing(self, rng: random.Random) -> None:
        """Test that embedding an Sp(2) element fixes e_j."""
        g = embed_fixing(random_symplectic(2, rng), 2)
        assert is_symplectic(g)
        assert g.rows[1][1] == QUAT_ONE
        assert all(g.rows[1][t].is_zero() for t in (0, 2))


class TestBlockStructure:
    """Tests for block_structure_check()."""

    def test_vertex_element(self) -> None:
        """Test diag(-1, 1, 1): e_2 is fixed, e_1 is not."""
        x = sp_exp_vertex(3, 1)
        assert block_structure_check(x, 2, 1)
        assert not block_structure_check(x, 1, 1)

    def test_plane_with_zero_row(self, rng: random.Random) -> None:
        """Test orbit elements whose plane has row j zero."""
        for _ in range(5):
            g = embed_fixing(random_symplectic(2, rng), 3)
            assert block_structure_check(orbit_point(g, 1), 3, 1)

    def test_requires_orbit_element(self) -> None:
        """Test that a matrix outside O_k is rejected."""
        with pytest.raises(PreconditionError):
            block_structure_check(QuatMatrix.identity(3), 1, 1)

    def test_requires_small_k(self) -> None:
        """Test that 2k > n is rejected."""
        with pytest.raises(PreconditionError):
            block_structure_check(sp_exp_vertex(3, 2), 1, 2)


class TestFloatArrays:
    """Tests for float quaternion arrays and polar_sp_part()."""

    def test_float_product_matches_exact(self, rng: random.Random) -> None:
        """Test float multiplication and star against exact arithmetic."""
        a, b = random_symplectic(2, rng), random_symplectic(2, rng)
        product = float_quat_matmul(quat_to_array(a), quat_to_array(b))
        assert np.allclose(product, quat_to_array(a @ b))
        assert np.allclose(float_star(quat_to_array(a)), quat_to_array(a.star()))

    def test_polar_of_scaled_symplectic(self, rng: random.Random) -> None:
        """Test kappa(3g) = g."""
        g = quat_to_array(random_symplectic(2, rng))
        assert np.allclose(polar_sp_part(3.0 * g), g, atol=1e-9)

    def test_polar_of_positive_diagonal(self) -> None:
        """Test that a positive diagonal matrix has compact factor I."""
        arr = quat_to_array(_diag(QuatRat(2), QuatRat(5)))
        assert np.allclose(polar_sp_part(arr), quat_to_array(QuatMatrix.identity(2)))

    def test_polar_of_singular(self) -> None:
        """Test that a singular input is rejected."""
        with pytest.raises(PreconditionError):
            polar_sp_part(np.zeros((2, 2, 4)))

    def test_polar_iteration_cap(self, rng: random.Random) -> None:
        """Test that too few iterations raise ConvergenceError."""
        g = quat_to_array(random_symplectic(2, rng))
        with pytest.raises(ConvergenceError):
            polar_sp_part(3.0 * g, AlcoveCatConfig(polar_max_iterations=1))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
