"""
Fundamental alcove geometry and the affine Weyl group.

Points of the torus Lie algebra are rational coweight vectors H normalized so
that the fundamental alcove is A0 = {H : 0 < alpha(H) < 1 for all positive
roots alpha} and the kernel of exp is the coroot lattice. Affine Weyl group
elements act by H -> w H + z; an alcove is stored as the unique element that
carries A0 onto it.

Walls are indexed 0..n: wall 0 is alpha_0(H) = 1, wall j >= 1 is
alpha_j(H) = 0. Face F_k is the facet of the closed alcove on wall k, the one
opposite the vertex v_k.
"""

import logging
import random
import threading
import weakref
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import EnumerationLimitError, PreconditionError
from alcove_cat.exact_core import (
    QMat,
    QVec,
    dot,
    lerp,
    solve_linear,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)
from alcove_cat.root_system import RootSystem, coroot_for_form

logger = logging.getLogger(__name__)

TorusPoint = QVec


@dataclass(frozen=True)
class Wall:
    """
    Affine wall {H : alpha(H) = level} with reflection H -> H - (alpha(H) - level) h.

    The closed fundamental alcove lies on the side where ``inside(H) >= 0``.
    """

    index: int
    alpha: QVec
    coroot: QVec
    level: Fraction

    def inside(self, H: QVec) -> Fraction:
        value = dot(self.alpha, H)
        return self.level - value if self.index == 0 else value - self.level

    def reflect(self, H: QVec) -> QVec:
        return vec_sub(H, vec_scale(dot(self.alpha, H) - self.level, self.coroot))


@dataclass(frozen=True)
class AffineIsometry:
    """
    Affine Weyl group element H -> linear @ H + translation.

    Composition follows (w1, t1) o (w2, t2) = (w1 w2, w1 t2 + t1).

    Example:
        >>> e = AffineIsometry.identity(2)
        >>> e(zero_vec(2)) == zero_vec(2)
        True
    """

    linear: QMat
    translation: QVec

    @classmethod
    def identity(cls, dim: int) -> "AffineIsometry":
        return cls(QMat.identity(dim), zero_vec(dim))

    @classmethod
    def from_wall(cls, wall: Wall) -> "AffineIsometry":
        dim = len(wall.alpha)
        return cls(
            QMat.identity(dim) - QMat.outer(wall.coroot, wall.alpha),
            vec_scale(wall.level, wall.coroot),
        )

    @property
    def dim(self) -> int:
        return self.linear.nrows

    def __call__(self, H: QVec) -> QVec:
        return vec_add(self.linear.apply(H), self.translation)

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """self o other."""
        return AffineIsometry(
            self.linear @ other.linear,
            vec_add(self.linear.apply(other.translation), self.translation),
        )

    __matmul__ = compose

    def then_wall(self, wall: Wall) -> "AffineIsometry":
        """self o r for the wall reflection r, as a rank-one update."""
        lh = self.linear.apply(wall.coroot)
        return AffineIsometry(
            self.linear - QMat.outer(lh, wall.alpha),
            vec_add(self.translation, vec_scale(wall.level, lh)),
        )

    def wall_then(self, wall: Wall) -> "AffineIsometry":
        """r o self for the wall reflection r, as a rank-one update."""
        alpha_l = tuple(
            dot(wall.alpha, self.linear.column(j)) for j in range(self.linear.ncols)
        )
        shift = dot(wall.alpha, self.translation) - wall.level
        return AffineIsometry(
            self.linear - QMat.outer(wall.coroot, alpha_l),
            vec_sub(self.translation, vec_scale(shift, wall.coroot)),
        )

    def inverse(self) -> "AffineIsometry":
        inv = self.linear.inverse()
        return AffineIsometry(inv, tuple(-x for x in inv.apply(self.translation)))

    def is_identity(self) -> bool:
        return self.linear.is_identity() and all(x == 0 for x in self.translation)

    def to_dict(self) -> dict[str, object]:
        return {
            "linear": [list(r) for r in self.linear.rows],
            "translation": list(self.translation),
        }


@dataclass(frozen=True)
class Alcove:
    """An alcove, identified with the affine Weyl element carrying A0 onto it."""

    rep: AffineIsometry


@dataclass(frozen=True)
class VertexSet:
    """Vertices v_0..v_n of the closed fundamental alcove."""

    vertices: tuple[TorusPoint, ...]

    def __getitem__(self, k: int) -> TorusPoint:
        return self.vertices[k]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[TorusPoint]:
        return iter(self.vertices)


@dataclass(frozen=True)
class StabilizerGroup:
    """
    Finite subgroup of the affine Weyl group generated by wall reflections.

    ``elements`` keeps breadth-first discovery order so that seeded sampling
    from the group is reproducible.
    """

    generators: tuple[int, ...]
    elements: tuple[AffineIsometry, ...]
    element_set: frozenset[AffineIsometry] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: object) -> bool:
        return g in self.element_set

    def __len__(self) -> int:
        return len(self.elements)

    def fixes(self, H: QVec) -> bool:
        return all(g(H) == H for g in self.elements)


@dataclass(frozen=True)
class BallElement:
    """Affine Weyl element found by bounded word-length search."""

    element: AffineIsometry
    inverse: AffineIsometry
    length: int


class AlcoveGeometry:
    """
    Alcove computations for one root system with cached group closures.

    Point stabilizers depend only on the set of faces containing the point,
    so closures and vertex orbits are cached per face set. The caches are
    guarded by a lock; everything they hold is immutable.

    Example:
        >>> geo = AlcoveGeometry(build(LieType.parse("C2")))
        >>> [geo.stabilizer(k).order for k in range(3)]
        [8, 4, 8]
    """

    def __init__(self, rs: RootSystem, config: Optional[AlcoveCatConfig] = None) -> None:
        self.rs = rs
        self.config = config or default_config()
        self.n = rs.rank
        self.walls = self._build_walls()
        self.reflections = tuple(AffineIsometry.from_wall(w) for w in self.walls)
        self.vertex_set = self._solve_vertices()
        self._lock = threading.Lock()
        self._closures: dict[frozenset[int], StabilizerGroup] = {}
        self._vertex_image_cache: dict[tuple[frozenset[int], int], frozenset[QVec]] = {}
        logger.debug(f"Alcove geometry for {rs.lie_type}: vertices {self.vertex_set}")

    def _build_walls(self) -> tuple[Wall, ...]:
        rs = self.rs
        walls = [
            Wall(0, rs.highest_root, coroot_for_form(rs.form, rs.highest_root), Fraction(1))
        ]
        for j, a in enumerate(rs.simple_roots, start=1):
            walls.append(Wall(j, a, coroot_for_form(rs.form, a), Fraction(0)))
        return tuple(walls)

    def _solve_vertices(self) -> VertexSet:
        rs = self.rs
        verts = [zero_vec(rs.ambient_dim)]
        for k in range(1, self.n + 1):
            rows = list(rs.simple_roots) + list(rs.torus_constraints)
            rhs = [
                Fraction(1, rs.marks[k - 1]) if j == k - 1 else Fraction(0)
                for j in range(self.n)
            ] + [Fraction(0)] * len(rs.torus_constraints)
            v = solve_linear(QMat.from_rows(rows), tuple(rhs))
            if v is None:
                raise ArithmeticError(f"No vertex v_{k} for {rs.lie_type}")
            verts.append(v)
        return VertexSet(tuple(verts))

    # -- faces and membership ------------------------------------------------

    def vertex(self, k: int) -> TorusPoint:
        self._check_index(k)
        return self.vertex_set[k]

    def _check_index(self, k: int) -> None:
        if not 0 <= k <= self.n:
            raise PreconditionError(f"Vertex/wall index {k} outside 0..{self.n}")

    def in_closed_alcove(self, H: QVec) -> bool:
        return all(w.inside(H) >= 0 for w in self.walls)

    def faces_containing(self, H: QVec) -> frozenset[int]:
        """Indices j with H on the wall of F_j (meaningful for H in the closed alcove)."""
        return frozenset(w.index for w in self.walls if w.inside(H) == 0)

    def on_face(self, H: QVec, k: int) -> bool:
        return self.walls[k].inside(H) == 0

    def face_barycenter(self, j: int) -> TorusPoint:
        """Average of the vertices spanning F_j."""
        self._check_index(j)
        others = [v for i, v in enumerate(self.vertex_set) if i != j]
        total = others[0]
        for v in others[1:]:
            total = vec_add(total, v)
        return vec_scale(Fraction(1, len(others)), total)

    def barycenter(self) -> TorusPoint:
        total = self.vertex_set[0]
        for v in self.vertex_set.vertices[1:]:
            total = vec_add(total, v)
        return vec_scale(Fraction(1, self.n + 1), total)

    def from_barycentric(self, weights: Iterable[Fraction]) -> TorusPoint:
        point = zero_vec(self.rs.ambient_dim)
        for c, v in zip(weights, self.vertex_set, strict=True):
            point = vec_add(point, vec_scale(c, v))
        return point

    def barycentric_grid(self, denominator: int) -> list[TorusPoint]:
        """All points sum(a_i/d v_i) with nonnegative integers a_i summing to d."""
        points = []
        for parts in _compositions(denominator, self.n + 1):
            points.append(self.from_barycentric(Fraction(a, denominator) for a in parts))
        return points

    # -- reflections and reduction -------------------------------------------

    def wall_reflection(self, k: int) -> AffineIsometry:
        self._check_index(k)
        return self.reflections[k]

    def _reduce(self, u: QVec) -> tuple[QVec, AffineIsometry, AffineIsometry]:
        self.rs.check_torus_point(u)
        dim = self.rs.ambient_dim
        x = u
        w = AffineIsometry.identity(dim)
        w_inv = AffineIsometry.identity(dim)
        for step in range(self.config.max_reduce_steps):
            violated = next((wl for wl in self.walls if wl.inside(x) < 0), None)
            if violated is None:
                return x, w, w_inv
            logger.debug(f"reduce step {step}: reflect across wall {violated.index}")
            x = violated.reflect(x)
            w = w.then_wall(violated)
            w_inv = w_inv.wall_then(violated)
        raise EnumerationLimitError(
            f"reduce_to_alcove did not finish in {self.config.max_reduce_steps} steps"
        )

    def reduce_to_alcove(self, u: QVec) -> tuple[TorusPoint, AffineIsometry]:
        """
        Fold u into the closed fundamental alcove.

        At each step the lowest-index violated wall is reflected across.

        Returns:
            (u_bar, w) with u_bar in the closed alcove and w(u_bar) = u
        """
        x, w, _ = self._reduce(u)
        return x, w

    # -- group closures --------------------------------------------------------

    def closure(self, generators: Iterable[int]) -> StabilizerGroup:
        """
        Breadth-first closure of the wall reflections with the given indices.

        Raises:
            EnumerationLimitError: If the group exceeds config.bfs_limit
        """
        key = frozenset(generators)
        with self._lock:
            cached = self._closures.get(key)
        if cached is not None:
            return cached

        gens = [self.walls[j] for j in sorted(key)]
        identity = AffineIsometry.identity(self.rs.ambient_dim)
        seen = {identity}
        ordered = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for wall in gens:
                    h = g.then_wall(wall)
                    if h not in seen:
                        seen.add(h)
                        ordered.append(h)
                        nxt.append(h)
            if len(seen) > self.config.bfs_limit:
                raise EnumerationLimitError(
                    f"Closure of walls {sorted(key)} for {self.rs.lie_type} "
                    f"exceeds bfs_limit={self.config.bfs_limit}"
                )
            frontier = nxt
        group = StabilizerGroup(tuple(sorted(key)), tuple(ordered), frozenset(seen))
        logger.info(
            f"Closure of walls {sorted(key)} in {self.rs.lie_type}: order {group.order}"
        )
        with self._lock:
            self._closures[key] = group
        return group

    def stabilizer(self, k: int) -> StabilizerGroup:
        """W_k, generated by the reflections r_j with j != k."""
        self._check_index(k)
        return self.closure(j for j in range(self.n + 1) if j != k)

    def point_stabilizer(self, u_bar: QVec) -> StabilizerGroup:
        """
        Stabilizer of a point of the closed alcove.

        Raises:
            PreconditionError: If u_bar lies outside the closed alcove
        """
        if not self.in_closed_alcove(u_bar):
            raise PreconditionError(f"{u_bar} is not in the closed fundamental alcove")
        return self.closure(self.faces_containing(u_bar))

    def alcoves_at_vertex(self, k: int) -> set[Alcove]:
        """Alcoves whose closure contains v_k: {w(A0) : w in W_k}."""
        return {Alcove(g) for g in self.stabilizer(k).elements}

    def alcove_contains(self, alcove: Alcove, H: QVec) -> bool:
        """Whether H lies in the closure of the alcove."""
        return self.in_closed_alcove(alcove.rep.inverse()(H))

    def alcove_walls(self, alcove: Alcove) -> tuple[Wall, ...]:
        """
        Walls of w(A0), indexed like those of A0.

        Wall k of w(A0) is {H : beta(H) = level + beta(t)} with beta = alpha_k o w^-1
        on the linear part, and ``inside`` keeps the orientation of A0.
        """
        w = alcove.rep
        dual = w.linear.inverse().transpose()
        walls = []
        for wall in self.walls:
            beta = dual.apply(wall.alpha)
            walls.append(
                Wall(
                    wall.index,
                    beta,
                    w.linear.apply(wall.coroot),
                    wall.level + dot(beta, w.translation),
                )
            )
        return tuple(walls)

    def _vertex_images(self, faces: frozenset[int], k: int) -> frozenset[QVec]:
        key = (faces, k)
        with self._lock:
            cached = self._vertex_image_cache.get(key)
        if cached is not None:
            return cached
        v = self.vertex_set[k]
        images = frozenset(s(v) for s in self.closure(faces).elements)
        with self._lock:
            self._vertex_image_cache[key] = images
        return images

    def in_cell(self, k: int, u: QVec) -> bool:
        """
        Membership in the cell C_k = union over W_k of w(closed A0 minus F_k).

        With (u_bar, w) = reduce_to_alcove(u), every w' with w'^-1 u in the
        closed alcove lies in w Stab(u_bar); so u is in C_k iff u_bar is off
        F_k and some s in Stab(u_bar) has s(v_k) = w^-1(v_k).
        """
        self._check_index(k)
        u_bar, _, w_inv = self._reduce(u)
        if self.on_face(u_bar, k):
            return False
        target = w_inv(self.vertex_set[k])
        return target in self._vertex_images(self.faces_containing(u_bar), k)

    def cells_containing(self, u: QVec) -> list[int]:
        return [k for k in range(self.n + 1) if self.in_cell(k, u)]

    def retract_torus(self, k: int, u: QVec, s: Fraction) -> TorusPoint:
        """
        Straight-line contraction of C_k onto v_k: (1 - s) u + s v_k.

        Raises:
            PreconditionError: If u is not in C_k or s is outside [0, 1]
        """
        s = Fraction(s)
        if not 0 <= s <= 1:
            raise PreconditionError(f"Retraction parameter {s} outside [0, 1]")
        if not self.in_cell(k, u):
            raise PreconditionError(f"{u} is not in the cell C_{k}")
        return lerp(u, self.vertex_set[k], s)

    # -- bounded enumeration -----------------------------------------------------

    def enumerate_ball(self, bound: int) -> list[BallElement]:
        """
        Distinct affine Weyl elements of word length <= bound in the wall
        reflections, breadth-first, with their inverses.
        """
        identity = AffineIsometry.identity(self.rs.ambient_dim)
        found = {identity: BallElement(identity, identity, 0)}
        frontier = [found[identity]]
        for length in range(1, bound + 1):
            nxt = []
            for item in frontier:
                for wall in self.walls:
                    g = item.element.then_wall(wall)
                    if g in found:
                        continue
                    entry = BallElement(g, item.inverse.wall_then(wall), length)
                    found[g] = entry
                    nxt.append(entry)
            if len(found) > self.config.bfs_limit:
                raise EnumerationLimitError(
                    f"Word-length ball of radius {bound} exceeds bfs_limit"
                )
            frontier = nxt
            logger.debug(f"ball radius {length}: {len(found)} elements")
        return list(found.values())

    # -- sampling ------------------------------------------------------------------

    def sample_alcove_point(
        self,
        rng: random.Random,
        denominator: int,
        avoid_face: Optional[int] = None,
        boundary_rate: float = 0.0,
    ) -> TorusPoint:
        """
        Random rational point of the closed alcove with barycentric
        denominator ``denominator``.

        ``avoid_face`` keeps the point off F_k; with probability
        ``boundary_rate`` the point is pushed onto another face.
        """
        parts = self.n + 1
        denominator = max(denominator, parts)
        on_boundary = rng.random() < boundary_rate
        forced_zero: Optional[int] = None
        if on_boundary:
            choices = [j for j in range(parts) if j != avoid_face]
            forced_zero = rng.choice(choices)
        while True:
            cuts = sorted(rng.randint(0, denominator) for _ in range(parts - 1))
            weights = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
            if forced_zero is not None:
                weights[forced_zero] = 0
                total = sum(weights)
                if total == 0:
                    continue
            else:
                total = denominator
            if avoid_face is not None and weights[avoid_face] == 0:
                continue
            return self.from_barycentric(Fraction(a, total) for a in weights)

    def sample_cell_point(
        self, k: int, rng: random.Random, denominator: int, boundary_rate: float
    ) -> TorusPoint:
        """A point w(x) of C_k with w uniform in W_k and x in the alcove off F_k."""
        x = self.sample_alcove_point(rng, denominator, avoid_face=k, boundary_rate=boundary_rate)
        g = rng.choice(self.stabilizer(k).elements)
        return g(x)

    def __repr__(self) -> str:
        return f"AlcoveGeometry({self.rs.lie_type}, cached_closures={len(self._closures)})"


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


GeometryKey = tuple[int, int]

_geometries: "weakref.WeakKeyDictionary[RootSystem, dict[GeometryKey, AlcoveGeometry]]" = (
    weakref.WeakKeyDictionary()
)
_geometries_lock = threading.Lock()


def geometry(rs: RootSystem, config: Optional[AlcoveCatConfig] = None) -> AlcoveGeometry:
    """
    Shared AlcoveGeometry for a root system, created on first use.

    One geometry is kept per system and per pair of enumeration limits, so
    callers with different limits never share closures.
    """
    config = config or default_config()
    key = (config.bfs_limit, config.max_reduce_steps)
    with _geometries_lock:
        per_limits = _geometries.setdefault(rs, {})
        geo = per_limits.get(key)
        if geo is None:
            geo = AlcoveGeometry(rs, config)
            per_limits[key] = geo
        return geo


def vertices(rs: RootSystem, config: Optional[AlcoveCatConfig] = None) -> VertexSet:
    """v_0 = 0 and v_k with alpha_j(v_k) = 0 (j != k), alpha_k(v_k) = 1/m_k."""
    return geometry(rs, config).vertex_set


def wall_reflection(
    rs: RootSystem, k: int, config: Optional[AlcoveCatConfig] = None
) -> AffineIsometry:
    return geometry(rs, config).wall_reflection(k)


def reduce_to_alcove(
    rs: RootSystem, u: QVec, config: Optional[AlcoveCatConfig] = None
) -> tuple[TorusPoint, AffineIsometry]:
    return geometry(rs, config).reduce_to_alcove(u)


def stabilizer(
    rs: RootSystem, k: int, config: Optional[AlcoveCatConfig] = None
) -> StabilizerGroup:
    return geometry(rs, config).stabilizer(k)


def alcoves_at_vertex(
    rs: RootSystem, k: int, config: Optional[AlcoveCatConfig] = None
) -> set[Alcove]:
    return geometry(rs, config).alcoves_at_vertex(k)


def point_stabilizer(
    rs: RootSystem, u_bar: QVec, config: Optional[AlcoveCatConfig] = None
) -> StabilizerGroup:
    return geometry(rs, config).point_stabilizer(u_bar)


def in_cell(rs: RootSystem, k: int, u: QVec, config: Optional[AlcoveCatConfig] = None) -> bool:
    return geometry(rs, config).in_cell(k, u)


def retract_torus(
    rs: RootSystem, k: int, u: QVec, s: Fraction, config: Optional[AlcoveCatConfig] = None
) -> TorusPoint:
    return geometry(rs, config).retract_torus(k, u, s)
