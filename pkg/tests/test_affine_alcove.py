"""
Tests for the fundamental alcove and the affine Weyl group.

Tests cover:
- Vertex coordinates for the classical families
- Wall reflections and affine composition
- Folding points into the alcove
- Vertex and point stabilizers, alcoves around a vertex
- Cell membership and the straight-line retraction
- Bounded word enumeration and seeded sampling
"""

import random
from collections.abc import Callable
from fractions import Fraction

import pytest

from alcove_cat.affine_alcove import (
    AffineIsometry,
    Alcove,
    AlcoveGeometry,
    alcoves_at_vertex,
    geometry,
    in_cell,
    point_stabilizer,
    reduce_to_alcove,
    retract_torus,
    stabilizer,
    vertices,
    wall_reflection,
)
from alcove_cat.config import AlcoveCatConfig
from alcove_cat.errors import DimensionMismatchError, EnumerationLimitError, PreconditionError
from alcove_cat.exact_core import qvec, vec_add
from alcove_cat.orbit_classifier import classify_subsystem, subsystem_weyl_order, vertex_subsystem
from alcove_cat.root_system import RootSystem

GeometryFactory = Callable[[str], AlcoveGeometry]


class TestVertices:
    """Tests for the vertices v_0..v_n."""

    def test_c2_vertices(self, c2: RootSystem) -> None:
        """Test the C2 vertices (0,0), (1/2,0), (1/2,1/2)."""
        assert list(vertices(c2)) == [qvec([0, 0]), qvec(["1/2", 0]), qvec(["1/2", "1/2"])]

    def test_c_vertices_are_half_ones(self, alcove: GeometryFactory) -> None:
        """Test v_k = (1/2)(1,..,1,0,..,0) with k ones in C4."""
        geo = alcove("C4")
        for k in range(5):
            expected = qvec(["1/2"] * k + [0] * (4 - k))
            assert geo.vertex(k) == expected

    def test_a_vertices(self, alcove: GeometryFactory) -> None:
        """Test v_k of A3 is (n+1-k repeated k, then -k)/(n+1)."""
        geo = alcove("A3")
        for k in range(1, 4):
            expected = tuple(
                Fraction(4 - k, 4) if i < k else Fraction(-k, 4) for i in range(4)
            )
            assert geo.vertex(k) == expected

    @pytest.mark.parametrize("name", ["A2", "B3", "C3", "D4", "G2", "F4"])
    def test_highest_root_is_one_on_vertices(self, alcove: GeometryFactory, name: str) -> None:
        """Test alpha_0(v_k) = 1 for every k >= 1."""
        geo = alcove(name)
        for k in range(1, geo.n + 1):
            assert geo.rs.pair(geo.rs.highest_root, geo.vertex(k)) == 1

    def test_vertex_lies_off_its_face_only(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that v_k is on every face except F_k."""
        for k in range(3):
            assert c2_geometry.faces_containing(c2_geometry.vertex(k)) == frozenset(
                j for j in range(3) if j != k
            )

    def test_vertex_index_out_of_range(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that k outside 0..n is rejected."""
        with pytest.raises(PreconditionError):
            c2_geometry.vertex(3)


class TestWallReflections:
    """Tests for wall reflections and affine isometries."""

    def test_r0_moves_origin(self, c2: RootSystem) -> None:
        """Test r_0(0,0) = (1,0) in C2."""
        assert wall_reflection(c2, 0)(qvec([0, 0])) == qvec([1, 0])

    def test_reflections_are_involutions(self, c2_geometry: AlcoveGeometry) -> None:
        """Test r_k o r_k = identity."""
        for k in range(3):
            r = c2_geometry.wall_reflection(k)
            assert r.compose(r).is_identity()

    def test_reflection_fixes_other_vertices(self, c2_geometry: AlcoveGeometry) -> None:
        """Test r_k(v_j) = v_j for j != k."""
        for k in range(3):
            r = c2_geometry.wall_reflection(k)
            for j in range(3):
                if j != k:
                    assert r(c2_geometry.vertex(j)) == c2_geometry.vertex(j)

    def test_composition_law(self, c2_geometry: AlcoveGeometry) -> None:
        """Test (g o h)(x) = g(h(x)) and the rank-one update helpers."""
        r0, r1, r2 = (c2_geometry.wall_reflection(k) for k in range(3))
        g = r0 @ r1
        x = qvec(["1/3", "1/7"])
        assert (g @ r2)(x) == g(r2(x))
        assert g.then_wall(c2_geometry.walls[2]) == g @ r2
        assert g.wall_then(c2_geometry.walls[2]) == r2 @ g

    def test_inverse(self, c2_geometry: AlcoveGeometry) -> None:
        """Test g o g^-1 = identity for a word of length three."""
        g = c2_geometry.wall_reflection(0) @ c2_geometry.wall_reflection(1)
        g = g @ c2_geometry.wall_reflection(2)
        assert (g @ g.inverse()).is_identity()

    def test_to_dict(self) -> None:
        """Test serialization of the identity."""
        data = AffineIsometry.identity(2).to_dict()
        assert data["translation"] == [0, 0]


class TestReduceToAlcove:
    """Tests for reduce_to_alcove()."""

    def test_point_already_in_alcove(self, c2: RootSystem) -> None:
        """Test that alcove points are returned unchanged."""
        u = qvec(["1/3", "1/6"])
        u_bar, w = reduce_to_alcove(c2, u)
        assert u_bar == u
        assert w.is_identity()

    def test_general_point(self, c2_geometry: AlcoveGeometry) -> None:
        """Test (5/4, 1/3) folds into the closed alcove with w(u_bar) = u."""
        u = qvec(["5/4", "1/3"])
        u_bar, w = c2_geometry.reduce_to_alcove(u)
        assert c2_geometry.in_closed_alcove(u_bar)
        assert w(u_bar) == u

    def test_lattice_translate_of_vertex(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that v_k + z reduces to v_k for z in the coroot lattice."""
        rs = c2_geometry.rs
        for k in range(3):
            for z in rs.coroot_lattice_basis:
                u_bar, _ = c2_geometry.reduce_to_alcove(vec_add(c2_geometry.vertex(k), z))
                assert u_bar == c2_geometry.vertex(k)

    def test_trace_constraint(self, alcove: GeometryFactory) -> None:
        """Test that A-type points off the trace-zero hyperplane are rejected."""
        with pytest.raises(DimensionMismatchError):
            alcove("A2").reduce_to_alcove(qvec([1, 0, 0]))

    def test_step_limit(self, c2: RootSystem) -> None:
        """Test that a small max_reduce_steps aborts distant points."""
        geo = AlcoveGeometry(c2, AlcoveCatConfig(max_reduce_steps=2))
        with pytest.raises(EnumerationLimitError):
            geo.reduce_to_alcove(qvec(["101/3", "-77/5"]))


class TestStabilizers:
    """Tests for vertex and point stabilizers."""

    def test_c2_orders(self, c2: RootSystem) -> None:
        """Test |W_0|, |W_1|, |W_2| = 8, 4, 8 in C2."""
        assert [stabilizer(c2, k).order for k in range(3)] == [8, 4, 8]

    def test_origin_stabilizer_is_linear(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that every element of W_0 fixes the origin."""
        assert c2_geometry.stabilizer(0).fixes(qvec([0, 0]))

    def test_stabilizer_fixes_vertex(self, alcove: GeometryFactory) -> None:
        """Test that W_k fixes v_k in B3."""
        geo = alcove("B3")
        for k in range(4):
            assert geo.stabilizer(k).fixes(geo.vertex(k))

    @pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2"])
    def test_order_matches_subsystem(self, alcove: GeometryFactory, name: str) -> None:
        """Test |W_k| equals the Weyl order of the subsystem at v_k."""
        geo = alcove(name)
        for k in range(geo.n + 1):
            components = classify_subsystem(geo.rs, vertex_subsystem(geo.rs, k))
            assert geo.stabilizer(k).order == subsystem_weyl_order(components)

    def test_interior_point(self, c2: RootSystem) -> None:
        """Test that an interior point has trivial stabilizer."""
        assert point_stabilizer(c2, qvec(["1/3", "1/6"])).order == 1

    def test_vertex_point_stabilizer(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that the stabilizer of v_k as a point is W_k."""
        for k in range(3):
            vertex_group = c2_geometry.point_stabilizer(c2_geometry.vertex(k))
            assert vertex_group.element_set == c2_geometry.stabilizer(k).element_set

    def test_face_midpoint(self, c2_geometry: AlcoveGeometry) -> None:
        """Test the barycenter of F_1 has stabilizer {1, r_1}."""
        group = c2_geometry.point_stabilizer(c2_geometry.face_barycenter(1))
        assert group.order == 2
        assert c2_geometry.wall_reflection(1) in group

    def test_point_outside_alcove(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that point_stabilizer requires a point of the closed alcove."""
        with pytest.raises(PreconditionError):
            c2_geometry.point_stabilizer(qvec([1, 1]))


class TestAlcovesAtVertex:
    """Tests for alcoves_at_vertex()."""

    def test_count_matches_stabilizer(self, c2: RootSystem) -> None:
        """Test that there are |W_k| alcoves around v_k."""
        for k in range(3):
            assert len(alcoves_at_vertex(c2, k)) == stabilizer(c2, k).order

    def test_a1_origin(self, root_system: Callable[[str], RootSystem]) -> None:
        """Test that two intervals meet at 0 in A1."""
        assert len(alcoves_at_vertex(root_system("A1"), 0)) == 2

    def test_closures_contain_vertex(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that each alcove around v_1 contains v_1."""
        v = c2_geometry.vertex(1)
        for a in c2_geometry.alcoves_at_vertex(1):
            assert c2_geometry.alcove_contains(a, v)

    def test_walls_of_base_alcove(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that the identity alcove has the walls of A0."""
        base = Alcove(AffineIsometry.identity(2))
        assert c2_geometry.alcove_walls(base) == c2_geometry.walls

    def test_walls_around_vertex(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that walls of w(A0) other than wall 1 pass through v_1."""
        v = c2_geometry.vertex(1)
        center = c2_geometry.barycenter()
        for a in c2_geometry.alcoves_at_vertex(1):
            for wall in c2_geometry.alcove_walls(a):
                assert wall.inside(a.rep(center)) > 0
                assert (wall.inside(v) == 0) == (wall.index != 1)
                assert wall.reflect(wall.reflect(center)) == center


class TestCells:
    """Tests for in_cell() and retract_torus()."""

    def test_vertex_in_own_cell(self, c2: RootSystem) -> None:
        """Test v_k in C_k and v_j not in C_k."""
        geo_vertices = list(vertices(c2))
        for k in range(3):
            for j, v in enumerate(geo_vertices):
                assert in_cell(c2, k, v) == (j == k)

    def test_barycenter_in_all_cells(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that the alcove barycenter lies in every cell."""
        assert c2_geometry.cells_containing(c2_geometry.barycenter()) == [0, 1, 2]

    def test_cells_cover_sampled_points(
        self, c2_geometry: AlcoveGeometry, rng: random.Random
    ) -> None:
        """Test that arbitrary points lie in at least one cell."""
        for _ in range(30):
            u = qvec([Fraction(rng.randint(-20, 20), 7), Fraction(rng.randint(-20, 20), 5)])
            assert c2_geometry.cells_containing(u)

    def test_sampled_cell_points(self, alcove: GeometryFactory, rng: random.Random) -> None:
        """Test that sample_cell_point stays in C_k."""
        geo = alcove("B2")
        for k in range(3):
            for _ in range(10):
                u = geo.sample_cell_point(k, rng, 12, 0.25)
                assert geo.in_cell(k, u)

    def test_retract_endpoints(self, c2: RootSystem, c2_geometry: AlcoveGeometry) -> None:
        """Test s = 0 gives u and s = 1 gives v_k."""
        u = c2_geometry.barycenter()
        assert retract_torus(c2, 1, u, Fraction(0)) == u
        assert retract_torus(c2, 1, u, Fraction(1)) == c2_geometry.vertex(1)

    def test_retract_midpoint(self, c2_geometry: AlcoveGeometry) -> None:
        """Test the halfway point from the barycenter toward v_1."""
        mid = c2_geometry.retract_torus(1, c2_geometry.barycenter(), Fraction(1, 2))
        assert mid == qvec(["5/12", "1/12"])
        assert c2_geometry.in_cell(1, mid)

    def test_retract_outside_cell(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that retracting a point outside C_k fails."""
        with pytest.raises(PreconditionError):
            c2_geometry.retract_torus(1, c2_geometry.vertex(0), Fraction(1, 2))

    def test_retract_parameter_range(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that s must lie in [0, 1]."""
        with pytest.raises(PreconditionError):
            c2_geometry.retract_torus(1, c2_geometry.barycenter(), Fraction(3, 2))


class TestEnumeration:
    """Tests for bounded enumeration and sampling."""

    def test_ball_sizes_grow(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that the ball of radius 1 holds the identity and three reflections."""
        ball = c2_geometry.enumerate_ball(1)
        assert len(ball) == 4
        assert sorted(b.length for b in ball) == [0, 1, 1, 1]

    def test_ball_inverses(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that each enumerated element carries its inverse."""
        for item in c2_geometry.enumerate_ball(4):
            assert (item.element @ item.inverse).is_identity()

    def test_barycentric_grid(self, c2_geometry: AlcoveGeometry) -> None:
        """Test the grid with denominator 2 has C(4, 2) = 6 points, all in the alcove."""
        grid = c2_geometry.barycentric_grid(2)
        assert len(grid) == 6
        assert all(c2_geometry.in_closed_alcove(p) for p in grid)

    def test_sampling_is_seeded(self, c2_geometry: AlcoveGeometry) -> None:
        """Test that equal seeds give equal samples."""
        a, b = random.Random(3), random.Random(3)
        first = [c2_geometry.sample_alcove_point(a, 12) for _ in range(5)]
        second = [c2_geometry.sample_alcove_point(b, 12) for _ in range(5)]
        assert first == second

    def test_avoid_face(self, c2_geometry: AlcoveGeometry, rng: random.Random) -> None:
        """Test that avoid_face keeps samples off F_k."""
        for _ in range(50):
            p = c2_geometry.sample_alcove_point(rng, 6, avoid_face=2, boundary_rate=0.5)
            assert c2_geometry.in_closed_alcove(p)
            assert not c2_geometry.on_face(p, 2)


class TestSharedGeometry:
    """Tests for the per-system geometry cache."""

    def test_same_limits_share(self, c2: RootSystem) -> None:
        """Test that configs with equal enumeration limits share one geometry."""
        assert geometry(c2, AlcoveCatConfig()) is geometry(c2, AlcoveCatConfig(seed=99))

    def test_limits_are_honoured(self, c2: RootSystem) -> None:
        """Test that a tighter bfs_limit gets its own geometry and applies."""
        tight = AlcoveCatConfig(bfs_limit=3)

        assert geometry(c2, tight) is not geometry(c2, AlcoveCatConfig())
        assert geometry(c2, tight).config.bfs_limit == 3
        with pytest.raises(EnumerationLimitError):
            stabilizer(c2, 0, tight)
        assert stabilizer(c2, 0, AlcoveCatConfig()).order == 8


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
