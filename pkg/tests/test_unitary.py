"""
Tests for torus exponentials and vertex elements of SU(n+1).
"""

from collections.abc import Callable
from fractions import Fraction

import numpy as np
import pytest

from alcove_cat.affine_alcove import AlcoveGeometry
from alcove_cat.errors import PreconditionError
from alcove_cat.exact_core import qvec
from alcove_cat.realizations.unitary import (
    central_phase,
    is_central,
    su_exp_matrix,
    su_exp_phases,
    su_vertex_phases,
)

GeometryFactory = Callable[[str], AlcoveGeometry]


class TestPhases:
    """Tests for su_exp_phases() and su_exp_matrix()."""

    def test_phases_mod_one(self) -> None:
        """Test that phases are reduced to [0, 1)."""
        assert su_exp_phases(qvec(["5/4", "-5/4"])) == (Fraction(1, 4), Fraction(3, 4))

    def test_trace_zero_required(self) -> None:
        """Test that off-hyperplane points are rejected."""
        with pytest.raises(PreconditionError):
            su_exp_phases(qvec([1, 0]))

    def test_matrix(self) -> None:
        """Test exp of (1/4, -1/4) is diag(i, -i)."""
        assert np.allclose(su_exp_matrix(qvec(["1/4", "-1/4"])), np.diag([1j, -1j]))


class TestVertexElements:
    """Tests for the central vertex elements of SU(n+1)."""

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_every_vertex_is_central(self, alcove: GeometryFactory, n: int) -> None:
        """Test exp v_k = e^{-2 pi i k/(n+1)} Id for all k."""
        geo = alcove(f"A{n}")
        for k in range(n + 1):
            phases = su_vertex_phases(geo, k)
            assert is_central(phases)
            assert phases[0] == central_phase(n, k)

    def test_central_phase(self) -> None:
        """Test the phase of exp v_1 in SU(4)."""
        assert central_phase(3, 1) == Fraction(3, 4)
        assert central_phase(3, 0) == 0

    def test_non_central(self) -> None:
        """Test that distinct phases are not central."""
        assert not is_central((Fraction(1, 4), Fraction(3, 4)))

    def test_index_range(self, alcove: GeometryFactory) -> None:
        """Test that k > n is rejected."""
        with pytest.raises(PreconditionError):
            su_vertex_phases(alcove("A2"), 3)

    def test_other_family(self, alcove: GeometryFactory) -> None:
        """Test that only type A has SU phases."""
        with pytest.raises(PreconditionError):
            su_vertex_phases(alcove("C2"), 1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
