"""
Tests for root data construction.

Tests cover:
- Root counts and highest roots for every family
- Marks of the highest root
- Coroots and the invariant form normalization
- Weyl reflections and group enumeration
"""

from collections.abc import Callable
from fractions import Fraction

import pytest

from alcove_cat.config import AlcoveCatConfig
from alcove_cat.errors import EnumerationLimitError, NotARootError
from alcove_cat.exact_core import QMat, qvec
from alcove_cat.models.lie_type import LieType
from alcove_cat.orbit_classifier import weyl_group_order
from alcove_cat.root_system import (
    RootSystem,
    build,
    coroot,
    coroot_for_form,
    in_coroot_lattice,
    marks,
    reflect_root,
    reflection_closure,
    weyl_group_elements,
    weyl_reflection,
)

SystemFactory = Callable[[str], RootSystem]


class TestBuild:
    """Tests for build()."""

    @pytest.mark.parametrize(
        "name,count",
        [
            ("A1", 2),
            ("A3", 12),
            ("B3", 18),
            ("C2", 8),
            ("C4", 32),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E8", 240),
        ],
    )
    def test_root_counts(self, root_system: SystemFactory, name: str, count: int) -> None:
        """Test |Delta| for a spread of types."""
        rs = root_system(name)
        assert len(rs.roots) == count
        assert len(rs.positive_roots) == count // 2

    def test_c2_data(self, c2: RootSystem) -> None:
        """Test the simple roots and highest root of C2."""
        assert c2.simple_roots == (qvec([1, -1]), qvec([0, 2]))
        assert c2.highest_root == qvec([2, 0])
        assert c2.height(c2.highest_root) == 3

    def test_a1_roots(self, root_system: SystemFactory) -> None:
        """Test that A1 has exactly +-(e1 - e2)."""
        rs = root_system("A1")
        assert set(rs.roots) == {qvec([1, -1]), qvec([-1, 1])}

    def test_roots_are_reflection_closure(self, root_system: SystemFactory) -> None:
        """Test that recomputing the closure from the base gives the same set."""
        for name in ("B3", "C3", "D4", "G2"):
            rs = root_system(name)
            closure = reflection_closure(list(rs.simple_roots), rs.form)
            assert set(closure) == set(rs.roots)

    def test_closure_respects_limit(self, c2: RootSystem) -> None:
        """Test that a tiny limit aborts the closure."""
        with pytest.raises(EnumerationLimitError):
            reflection_closure(list(c2.simple_roots), c2.form, limit=3)

    def test_cartan_matrix_c2(self, c2: RootSystem) -> None:
        """Test a_ij = alpha_j(h_i) for C2."""
        assert c2.cartan_matrix == ((2, -2), (-1, 2))

    def test_long_and_short_roots(self, c2: RootSystem) -> None:
        """Test that 2e1 is long and e1 - e2 is short in C2."""
        assert c2.is_long(qvec([2, 0]))
        assert not c2.is_long(qvec([1, -1]))
        assert sum(c2.is_long(a) for a in c2.positive_roots) == 2

    def test_to_dict(self, c2: RootSystem) -> None:
        """Test the JSON-ready summary."""
        data = c2.to_dict()
        assert data["lie_type"] == "C2"
        assert data["group"] == "Sp(2)"
        assert data["num_roots"] == 8
        assert data["coordinates"] == "epsilon"

    def test_exceptional_coordinates(self, root_system: SystemFactory) -> None:
        """Test that exceptional types use the simple-root basis."""
        assert root_system("G2").to_dict()["coordinates"] == "simple-root"


class TestMarks:
    """Tests for marks()."""

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("A4", (1, 1, 1, 1)),
            ("B3", (1, 2, 2)),
            ("C3", (2, 2, 1)),
            ("D5", (1, 2, 2, 1, 1)),
            ("G2", (3, 2)),
            ("F4", (2, 3, 4, 2)),
        ],
    )
    def test_marks(self, root_system: SystemFactory, name: str, expected: tuple) -> None:
        """Test marks against the highest root in the simple-root basis."""
        rs = root_system(name)
        assert marks(rs) == expected
        assert rs.marks == expected

    def test_e8_largest_mark(self, root_system: SystemFactory) -> None:
        """Test that E8 has a mark equal to 6."""
        assert max(marks(root_system("E8"))) == 6


class TestCoroots:
    """Tests for coroot()."""

    def test_long_root(self, c2: RootSystem) -> None:
        """Test h of 2e1 in C2 is e1."""
        assert coroot(c2, qvec([2, 0])) == qvec([1, 0])

    def test_short_root(self, c2: RootSystem) -> None:
        """Test h of e1 - e2 in C2 is e1 - e2 scaled to pair to 2."""
        h = coroot(c2, qvec([1, -1]))
        assert h == qvec([1, -1])
        assert c2.pair(qvec([1, -1]), h) == 2

    def test_length_two_roots_are_self_dual(self, root_system: SystemFactory) -> None:
        """Test that roots of squared length 2 equal their coroots in epsilon coordinates."""
        rs = root_system("D4")
        for alpha in rs.roots:
            assert coroot(rs, alpha) == alpha

    def test_form_scaling_invariance(self, c2: RootSystem) -> None:
        """Test that rescaling the form leaves coroots unchanged."""
        for alpha in c2.roots:
            scaled = coroot_for_form(c2.form.scale(Fraction(7, 3)), alpha)
            assert scaled == coroot(c2, alpha)

    def test_not_a_root(self, c2: RootSystem) -> None:
        """Test that a non-root is rejected."""
        with pytest.raises(NotARootError):
            coroot(c2, qvec([1, 0]))

    def test_coroots_in_lattice(self, root_system: SystemFactory) -> None:
        """Test that every coroot lies in the coroot lattice."""
        rs = root_system("B3")
        assert all(in_coroot_lattice(rs, h) for h in rs.coroots.values())
        assert not in_coroot_lattice(rs, qvec(["1/2", 0, 0]))


class TestWeylGroup:
    """Tests for Weyl reflections and group enumeration."""

    def test_reflection_negates_root(self, c2: RootSystem) -> None:
        """Test s_alpha(alpha) = -alpha."""
        for alpha in c2.roots:
            assert reflect_root(c2, alpha, alpha) == tuple(-x for x in alpha)

    def test_a2_reflection_swaps_coordinates(self, root_system: SystemFactory) -> None:
        """Test that s_{e1 - e2} in A2 swaps the first two coordinates."""
        rs = root_system("A2")
        s = weyl_reflection(rs, qvec([1, -1, 0]))
        assert s == QMat.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]])

    def test_c2_coxeter_element_order(self, c2: RootSystem) -> None:
        """Test that the product of the simple reflections of C2 has order 4."""
        c = weyl_reflection(c2, c2.simple_roots[0]) @ weyl_reflection(c2, c2.simple_roots[1])
        assert not c.power(2).is_identity()
        assert c.power(4).is_identity()

    @pytest.mark.parametrize("name", ["A2", "B2", "C3", "G2"])
    def test_group_order(self, root_system: SystemFactory, name: str) -> None:
        """Test that BFS enumeration matches the closed-form order."""
        rs = root_system(name)
        assert len(weyl_group_elements(rs)) == weyl_group_order(rs.lie_type)

    def test_group_enumeration_limit(self, c2: RootSystem) -> None:
        """Test that bfs_limit stops the enumeration."""
        with pytest.raises(EnumerationLimitError):
            weyl_group_elements(c2, AlcoveCatConfig(bfs_limit=3, alcove_bfs_threshold=3))

    def test_reflections_permute_roots(self, root_system: SystemFactory) -> None:
        """Test that each simple reflection maps Delta onto itself."""
        rs = root_system("F4")
        for a in rs.simple_roots:
            assert {reflect_root(rs, a, b) for b in rs.roots} == set(rs.roots)


def test_build_uses_given_config() -> None:
    """Test that build honors an explicit config."""
    rs = build(LieType.parse("B2"), AlcoveCatConfig())
    assert repr(rs) == "RootSystem(B2, roots=8)"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
