"""
Root data of the simple Lie types.

Torus points H and roots share one coordinate system in which the pairing
alpha(H) is the plain dot product:

* classical families use epsilon coordinates (A_n in the trace-zero
  hyperplane of an (n+1)-dimensional space, B/C/D in n dimensions);
* exceptional families write roots in the simple-root basis and torus
  points by their values alpha_i(H) on the simple roots.

The invariant form is normalized so long roots have squared length 2.
"""

import logging
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import (
    DimensionMismatchError,
    EnumerationLimitError,
    NotARootError,
)
from alcove_cat.exact_core import (
    QMat,
    QVec,
    dot,
    is_integral,
    solve_linear,
    unit_vec,
    vec_add,
    vec_sub,
    vec_scale,
    zero_vec,
)
from alcove_cat.models.lie_type import LieType

logger = logging.getLogger(__name__)

# Gram matrices B(alpha_i, alpha_j) of the exceptional simple roots, Bourbaki
# labelling. E-series: every simple root has squared length 2, edges are -1.
_E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7), (7, 8)]


def _e_gram(n: int) -> QMat:
    g = [[Fraction(2) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for a, b in _E_EDGES:
        if a <= n and b <= n:
            g[a - 1][b - 1] = g[b - 1][a - 1] = Fraction(-1)
    return QMat.from_rows(g)


_F4_GRAM = QMat.from_rows(
    [
        [2, -1, 0, 0],
        [-1, 2, -1, 0],
        [0, -1, 1, Fraction(-1, 2)],
        [0, 0, Fraction(-1, 2), 1],
    ]
)

# alpha_1 short, alpha_2 long.
_G2_GRAM = QMat.from_rows([[Fraction(2, 3), -1], [-1, 2]])


@dataclass(frozen=True, eq=False)
class RootSystem:
    """
    Root datum of one simple type.

    Attributes:
        lie_type: Family and rank
        ambient_dim: Length of root and torus coordinate vectors
        simple_roots: The base Pi, in Bourbaki order
        roots: All roots, deterministically ordered (negative roots first)
        positive_roots: Roots with nonnegative simple-root coefficients
        highest_root: alpha_0
        form: Gram matrix of the invariant form on root coordinates
        cartan_matrix: a_ij = alpha_j(h_{alpha_i})
        marks: m_j with alpha_0 = sum m_j alpha_j
        coroots: root -> h_alpha
        coroot_lattice_basis: simple coroots, a Z-basis of R^vee
        torus_constraints: linear forms that vanish on torus points
            (the trace row for A_n, empty otherwise)
    """

    lie_type: LieType
    ambient_dim: int
    simple_roots: tuple[QVec, ...]
    roots: tuple[QVec, ...]
    positive_roots: tuple[QVec, ...]
    highest_root: QVec
    form: QMat
    cartan_matrix: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    coroots: Mapping[QVec, QVec]
    coroot_lattice_basis: tuple[QVec, ...]
    torus_constraints: tuple[QVec, ...]
    root_coefficients: Mapping[QVec, tuple[int, ...]] = field(repr=False)
    root_set: frozenset[QVec] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    def is_root(self, v: QVec) -> bool:
        return v in self.root_set

    def pair(self, alpha: QVec, H: QVec) -> Fraction:
        """alpha(H)."""
        return dot(alpha, H)

    def inner(self, u: QVec, v: QVec) -> Fraction:
        """B(u, v) on root coordinates."""
        return dot(u, self.form.apply(v))

    def is_long(self, alpha: QVec) -> bool:
        return self.inner(alpha, alpha) == 2

    def coefficients(self, alpha: QVec) -> tuple[int, ...]:
        """Simple-root coefficients of a root."""
        try:
            return self.root_coefficients[alpha]
        except KeyError:
            raise NotARootError(f"{alpha} is not a root of {self.lie_type}") from None

    def height(self, alpha: QVec) -> int:
        return sum(self.coefficients(alpha))

    def check_torus_point(self, H: QVec) -> None:
        """
        Raises:
            DimensionMismatchError: If H has the wrong length or leaves the
                trace-zero hyperplane (family A)
        """
        if len(H) != self.ambient_dim:
            raise DimensionMismatchError(
                f"Torus point of length {len(H)} for {self.lie_type} "
                f"(ambient dimension {self.ambient_dim})"
            )
        for c in self.torus_constraints:
            if dot(c, H) != 0:
                raise DimensionMismatchError(
                    f"Torus point {H} violates the trace-zero constraint"
                )

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready summary; fractions are serialized by safe_json_dumps."""
        return {
            "lie_type": self.lie_type.name,
            "group": self.lie_type.group_name,
            "ambient_dim": self.ambient_dim,
            "coordinates": (
                "epsilon" if self.lie_type.is_classical else "simple-root"
            ),
            "num_roots": len(self.roots),
            "simple_roots": list(self.simple_roots),
            "highest_root": self.highest_root,
            "marks": list(self.marks),
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "form": [list(r) for r in self.form.rows],
            "coroot_lattice_basis": list(self.coroot_lattice_basis),
            "positive_roots": list(self.positive_roots),
        }

    def __repr__(self) -> str:
        return f"RootSystem({self.lie_type}, roots={len(self.roots)})"


def coroot_for_form(form: QMat, alpha: QVec) -> QVec:
    """h_alpha = 2 G alpha / B(alpha, alpha); invariant under rescaling G."""
    g_alpha = form.apply(alpha)
    return vec_scale(Fraction(2) / dot(alpha, g_alpha), g_alpha)


def _classical_data(t: LieType) -> tuple[int, list[QVec], QMat, list[QVec]]:
    n = t.rank
    if t.family == "A":
        dim = n + 1
        simple = [vec_sub(unit_vec(dim, i), unit_vec(dim, i + 1)) for i in range(n)]
        return dim, simple, QMat.identity(dim), [tuple(Fraction(1) for _ in range(dim))]

    dim = n
    chain = [vec_sub(unit_vec(dim, i), unit_vec(dim, i + 1)) for i in range(n - 1)]
    if t.family == "B":
        return dim, chain + [unit_vec(dim, n - 1)], QMat.identity(dim), []
    if t.family == "C":
        last = vec_scale(2, unit_vec(dim, n - 1))
        return dim, chain + [last], QMat.identity(dim).scale(Fraction(1, 2)), []
    # D
    last = vec_add(unit_vec(dim, n - 2), unit_vec(dim, n - 1))
    return dim, chain + [last], QMat.identity(dim), []


def _exceptional_data(t: LieType) -> tuple[int, list[QVec], QMat, list[QVec]]:
    n = t.rank
    gram = {"E": lambda: _e_gram(n), "F": lambda: _F4_GRAM, "G": lambda: _G2_GRAM}[
        t.family
    ]()
    return n, [unit_vec(n, i) for i in range(n)], gram, []


def reflection_closure(
    simple_roots: list[QVec], form: QMat, limit: int = 100_000
) -> dict[QVec, tuple[int, ...]]:
    """
    All roots generated from the simple roots by simple reflections.

    Returns:
        Map root -> integer simple-root coefficients
    """
    n = len(simple_roots)
    simple_coroots = [coroot_for_form(form, a) for a in simple_roots]
    found: dict[QVec, tuple[int, ...]] = {}
    queue: deque[tuple[QVec, tuple[int, ...]]] = deque()
    for i, a in enumerate(simple_roots):
        coeffs = tuple(1 if j == i else 0 for j in range(n))
        found[a] = coeffs
        queue.append((a, coeffs))

    while queue:
        beta, coeffs = queue.popleft()
        for i, (a, h) in enumerate(zip(simple_roots, simple_coroots)):
            c = dot(beta, h)
            if c == 0:
                continue
            image = vec_sub(beta, vec_scale(c, a))
            if image in found:
                continue
            new_coeffs = tuple(
                x - int(c) if j == i else x for j, x in enumerate(coeffs)
            )
            found[image] = new_coeffs
            queue.append((image, new_coeffs))
            if len(found) > limit:
                raise EnumerationLimitError(
                    f"Reflection closure exceeded {limit} roots"
                )
    return found


def _highest_root(simple_roots: list[QVec], root_set: frozenset[QVec]) -> QVec:
    beta = simple_roots[0]
    grew = True
    while grew:
        grew = False
        for a in simple_roots:
            candidate = vec_add(beta, a)
            if candidate in root_set:
                beta = candidate
                grew = True
                break
    return beta


def build(t: LieType, config: Optional[AlcoveCatConfig] = None) -> RootSystem:
    """
    Construct the root datum of a simple type.

    Args:
        t: Validated Lie type
        config: Supplies the enumeration cap; defaults to the environment

    Returns:
        Fully populated RootSystem

    Example:
        >>> rs = build(LieType.parse("C2"))
        >>> rs.highest_root
        (Fraction(2, 1), Fraction(0, 1))
        >>> len(rs.roots)
        8
    """
    config = config or default_config()
    if t.is_classical:
        dim, simple, form, constraints = _classical_data(t)
    else:
        dim, simple, form, constraints = _exceptional_data(t)

    coeff_map = reflection_closure(simple, form, limit=config.bfs_limit)
    root_set = frozenset(coeff_map)
    ordered = tuple(
        sorted(coeff_map, key=lambda r: (sum(coeff_map[r]), coeff_map[r]))
    )
    positive = tuple(r for r in ordered if all(c >= 0 for c in coeff_map[r]))

    highest = _highest_root(simple, root_set)
    simple_coroots = [coroot_for_form(form, a) for a in simple]
    cartan = tuple(
        tuple(int(dot(a_j, h_i)) for a_j in simple) for h_i in simple_coroots
    )
    coroot_map = {r: coroot_for_form(form, r) for r in ordered}

    rs = RootSystem(
        lie_type=t,
        ambient_dim=dim,
        simple_roots=tuple(simple),
        roots=ordered,
        positive_roots=positive,
        highest_root=highest,
        form=form,
        cartan_matrix=cartan,
        marks=_solve_marks(simple, highest),
        coroots=coroot_map,
        coroot_lattice_basis=tuple(simple_coroots),
        torus_constraints=tuple(constraints),
        root_coefficients=coeff_map,
        root_set=root_set,
    )
    logger.info(
        f"Built root system {t} ({t.group_name}): {len(ordered)} roots, "
        f"highest root {highest}, marks {rs.marks}"
    )
    return rs


def _solve_marks(simple: list[QVec], highest: QVec) -> tuple[int, ...]:
    solution = solve_linear(QMat.from_columns(simple), highest)
    if solution is None or not is_integral(solution):
        raise ArithmeticError(f"Highest root {highest} has no integral marks")
    return tuple(int(x) for x in solution)


def marks(rs: RootSystem) -> tuple[int, ...]:
    """
    Coefficients m_j of the highest root in the simple-root basis.

    Solved exactly with solve_linear; the system is always consistent.
    """
    return _solve_marks(list(rs.simple_roots), rs.highest_root)


def coroot(rs: RootSystem, alpha: QVec) -> QVec:
    """
    The coroot h_alpha, computed from the stored invariant form.

    Raises:
        NotARootError: If alpha is not a root
    """
    if not rs.is_root(alpha):
        raise NotARootError(f"{alpha} is not a root of {rs.lie_type}")
    return coroot_for_form(rs.form, alpha)


def weyl_reflection(rs: RootSystem, alpha: QVec) -> QMat:
    """
    Matrix of s_alpha on torus coordinates: H -> H - alpha(H) h_alpha.

    Its transpose acts on root coordinates; for the classical families the
    two coincide.

    Raises:
        NotARootError: If alpha is not a root
    """
    h = coroot(rs, alpha)
    return QMat.identity(rs.ambient_dim) - QMat.outer(h, alpha)


def reflect_root(rs: RootSystem, alpha: QVec, beta: QVec) -> QVec:
    """s_alpha(beta) = beta - beta(h_alpha) alpha."""
    h = coroot(rs, alpha)
    return vec_sub(beta, vec_scale(dot(beta, h), alpha))


def lattice_coordinates(rs: RootSystem, v: QVec) -> Optional[tuple[int, ...]]:
    """Coordinates of v in the simple-coroot basis, or None if v is not in R^vee."""
    basis = QMat.from_columns(list(rs.coroot_lattice_basis))
    solution = solve_linear(basis, v)
    if solution is None or not is_integral(solution):
        return None
    return tuple(int(x) for x in solution)


def in_coroot_lattice(rs: RootSystem, v: QVec) -> bool:
    return lattice_coordinates(rs, v) is not None


def weyl_group_elements(
    rs: RootSystem, config: Optional[AlcoveCatConfig] = None
) -> set[QMat]:
    """
    All elements of W as torus matrices, by BFS over simple reflections.

    Raises:
        EnumerationLimitError: If the closure exceeds config.bfs_limit
    """
    config = config or default_config()
    gens = [weyl_reflection(rs, a) for a in rs.simple_roots]
    identity = QMat.identity(rs.ambient_dim)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w @ s
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
        if len(seen) > config.bfs_limit:
            raise EnumerationLimitError(
                f"Weyl group of {rs.lie_type} exceeds bfs_limit={config.bfs_limit}"
            )
        frontier = nxt
        logger.debug(f"W({rs.lie_type}) BFS: {len(seen)} elements")
    return seen


def origin(rs: RootSystem) -> QVec:
    return zero_vec(rs.ambient_dim)
