"""
Classification of the distinguished conjugacy classes O_k = [exp v_k].

For each alcove vertex v_k the root subsystem
Sigma = {alpha : alpha(v_k) integral} is the root system of the centralizer
of exp v_k. Its Dynkin components give the stabilizer type, |Delta| - |Sigma|
the orbit dimension, and the family-specific identification names the
homogeneous space O_k. Summing relative categories gives the upper bound

    cat(G) + 1 <= sum_k (cat_G(O_k) + 1).
"""

import logging
import math
from collections.abc import Iterable, Mapping
from typing import Optional

import networkx as nx

from alcove_cat.affine_alcove import geometry
from alcove_cat.errors import PreconditionError
from alcove_cat.exact_core import QVec, vec_sub
from alcove_cat.models.lie_type import LieType
from alcove_cat.models.orbit import (
    BoundReport,
    CategoryValue,
    Identification,
    OrbitSummary,
    VertexOrbit,
)
from alcove_cat.root_system import RootSystem, reflect_root

logger = logging.getLogger(__name__)

_EXCEPTIONAL_WEYL_ORDERS = {
    ("E", 6): 51_840,
    ("E", 7): 2_903_040,
    ("E", 8): 696_729_600,
    ("F", 4): 1_152,
    ("G", 2): 12,
}

# Values of cat(G) established in the literature, keyed by (family, rank).
_KNOWN_CATEGORIES: dict[tuple[str, int], tuple[int, str]] = {
    ("C", 1): (1, "cat(Sp(1)) = cat(S^3) = 1"),
    ("C", 2): (3, "Fernandez-Suarez, Gomez-Tato, Strom, Tanre"),
    ("C", 3): (5, "Fernandez-Suarez, Gomez-Tato, Strom, Tanre"),
    ("B", 2): (3, "Iwase-Kono"),
    ("B", 3): (5, "Iwase-Kono"),
    ("B", 4): (8, "Iwase-Kono"),
}

SP_CONJECTURE = "cat_Sp(n)(O_k) = min(k, n - k) (quaternionic Grassmannian conjecture)"


def weyl_group_order(t: LieType) -> int:
    """|W| of an irreducible type from the classical closed forms."""
    n = t.rank
    if t.family == "A":
        return math.factorial(n + 1)
    if t.family in ("B", "C"):
        return 2**n * math.factorial(n)
    if t.family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return _EXCEPTIONAL_WEYL_ORDERS[(t.family, n)]


def normalize_components(types: Iterable[tuple[str, int]]) -> list[LieType]:
    """
    Rewrite possibly degenerate (family, rank) pairs as irreducible types.

    D1, B0, C0 and rank-0 pieces vanish; D2 = A1 x A1, D3 = A3,
    B1 = C1 = A1. The result is sorted.
    """
    out: list[LieType] = []
    for family, rank in types:
        if rank <= 0 or (family == "D" and rank == 1):
            continue
        if family == "D" and rank == 2:
            out.extend([LieType.of("A", 1), LieType.of("A", 1)])
        elif family == "D" and rank == 3:
            out.append(LieType.of("A", 3))
        elif family in ("B", "C") and rank == 1:
            out.append(LieType.of("A", 1))
        else:
            out.append(LieType.of(family, rank))
    return sorted(out, key=lambda t: t.sort_key)


def vertex_subsystem(rs: RootSystem, k: int) -> tuple[QVec, ...]:
    """Roots alpha with alpha(v_k) an integer, in the root system's order."""
    v = geometry(rs).vertex(k)
    return tuple(a for a in rs.roots if rs.pair(a, v).denominator == 1)


def subsystem_simple_roots(rs: RootSystem, sigma: Iterable[QVec]) -> list[QVec]:
    """
    Simple system of a closed subsystem: its positive roots (positive in rs)
    that are not the sum of two of its positive roots.
    """
    positive = [a for a in sigma if all(c >= 0 for c in rs.coefficients(a))]
    pos_set = set(positive)
    simple = []
    for beta in positive:
        if not any(vec_sub(beta, a) in pos_set for a in positive if a != beta):
            simple.append(beta)
    return simple


def _identify_component(
    rs: RootSystem, simple: list[QVec], ambient_family: str
) -> LieType:
    r = len(simple)
    if r == 1:
        return LieType.of("A", 1)

    graph = nx.Graph()
    graph.add_nodes_from(range(r))
    bonds: dict[tuple[int, int], int] = {}
    for i in range(r):
        for j in range(i + 1, r):
            bij = rs.inner(simple[i], simple[j])
            if bij == 0:
                continue
            # a_ij * a_ji = 4 B(i,j)^2 / (B(i,i) B(j,j))
            mult = int(
                4 * bij * bij / (rs.inner(simple[i], simple[i]) * rs.inner(simple[j], simple[j]))
            )
            graph.add_edge(i, j)
            bonds[(i, j)] = mult

    if any(m == 3 for m in bonds.values()):
        return LieType.of("G", 2)

    degrees = dict(graph.degree())
    double = [edge for edge, m in bonds.items() if m == 2]
    if not double:
        branch = [v for v, deg in degrees.items() if deg == 3]
        if not branch:
            return LieType.of("A", r)
        arms = sorted(
            len(nx.node_connected_component(graph.subgraph(set(graph) - {branch[0]}), u))
            for u in graph.neighbors(branch[0])
        )
        if arms[:2] == [1, 1]:
            return LieType.of("D", r)
        return LieType.of("E", r)

    if r == 2:
        return LieType.of("C" if ambient_family == "C" else "B", 2)
    i, j = double[0]
    if r == 4 and degrees[i] == 2 and degrees[j] == 2:
        return LieType.of("F", 4)
    short_count = sum(1 for a in simple if not rs.is_long(a))
    return LieType.of("B" if short_count == 1 else "C", r)


def classify_subsystem(rs: RootSystem, sigma: Iterable[QVec]) -> list[LieType]:
    """
    Irreducible Dynkin types of a closed root subsystem, sorted.

    Components are the connected pieces of the graph on its simple roots
    with an edge wherever the invariant form pairs them nonzero.
    """
    simple = subsystem_simple_roots(rs, sigma)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(simple)))
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            if rs.inner(simple[i], simple[j]) != 0:
                graph.add_edge(i, j)
    components = [
        _identify_component(rs, [simple[i] for i in sorted(comp)], rs.lie_type.family)
        for comp in nx.connected_components(graph)
    ]
    return sorted(components, key=lambda t: t.sort_key)


def is_closed_subsystem(rs: RootSystem, sigma: Iterable[QVec]) -> bool:
    """Whether sigma is closed under its own reflections."""
    members = set(sigma)
    return all(reflect_root(rs, a, b) in members for a in members for b in members)


def identify_orbit(rs: RootSystem, k: int) -> Identification:
    """Name the homogeneous space O_k."""
    sigma = vertex_subsystem(rs, k)
    if len(sigma) == len(rs.roots):
        return Identification.center_point()
    family, n = rs.lie_type.family, rs.lie_type.rank
    if family == "C" and 0 < k < n:
        return Identification.quaternionic_grassmannian(min(k, n - k), n)
    if family == "B" and 2 <= k <= n:
        return Identification.oriented_real_grassmannian(2 * k, 2 * n + 1)
    if family == "D":
        return Identification.oriented_real_grassmannian(2 * k, 2 * n)
    return Identification.generic()


def relative_category(orbit_id: Identification) -> CategoryValue:
    """cat_G(O_k) as far as it is known."""
    if orbit_id.kind == "center_point":
        return CategoryValue.known(0, "a point is contractible in G")
    if orbit_id.kind == "quaternionic_grassmannian" and orbit_id.d is not None:
        return CategoryValue.conjectured(orbit_id.d, SP_CONJECTURE)
    if orbit_id.kind == "oriented_real_grassmannian":
        return CategoryValue.unknown("relative category of Spin orbits is open")
    return CategoryValue.unknown("no identification of this orbit")


def classify_vertex(rs: RootSystem, k: int) -> VertexOrbit:
    """Full description of O_k."""
    sigma = vertex_subsystem(rs, k)
    ident = identify_orbit(rs, k)
    orbit = VertexOrbit(
        k=k,
        vertex=geometry(rs).vertex(k),
        subsystem=sigma,
        stabilizer_components=tuple(classify_subsystem(rs, sigma)),
        is_central=len(sigma) == len(rs.roots),
        orbit_dim=len(rs.roots) - len(sigma),
        identification=ident,
        rel_cat=relative_category(ident),
    )
    logger.debug(
        f"{rs.lie_type} O_{k}: {ident.label}, dim {orbit.orbit_dim}, "
        f"stabilizer {orbit.stabilizer_label}"
    )
    return orbit


def classify_vertices(rs: RootSystem) -> list[VertexOrbit]:
    return [classify_vertex(rs, k) for k in range(rs.rank + 1)]


def subsystem_weyl_order(components: Iterable[LieType]) -> int:
    return math.prod(weyl_group_order(t) for t in components)


def ls_bound(
    rs: RootSystem,
    overrides: Optional[Mapping[int, int]] = None,
    assume_conjecture: bool = False,
) -> BoundReport:
    """
    Evaluate cat(G) <= sum_k (cat_G(O_k) + 1) - 1.

    Args:
        rs: Root system of G
        overrides: k -> assumed value of cat_G(O_k); always echoed in
            the report's assumptions
        assume_conjecture: Count conjectured values as summands; when
            false a conjectured summand leaves the bound unknown

    Returns:
        BoundReport, with upper_bound None if any summand is unknown
    """
    overrides = dict(overrides or {})
    t = rs.lie_type
    n = t.rank
    for k, value in overrides.items():
        if not 0 <= k <= n:
            raise PreconditionError(f"Override index {k} outside 0..{n}")
        if value < 0:
            raise PreconditionError(f"Override value for k={k} must be nonnegative, got {value}")

    assumptions: list[str] = []
    notes: list[str] = []
    rows: list[OrbitSummary] = []
    conjecture_used = False
    bound_known = True

    for orbit in classify_vertices(rs):
        cat = orbit.rel_cat
        if orbit.k in overrides:
            cat = CategoryValue.assumed(overrides[orbit.k])
            assumptions.append(f"cat_G(O_{orbit.k}) = {overrides[orbit.k]} (override)")
        elif cat.kind == "conjectured":
            if assume_conjecture:
                conjecture_used = True
            else:
                bound_known = False
        if cat.value is None:
            bound_known = False
        rows.append(
            OrbitSummary(
                k=orbit.k,
                identification=orbit.identification,
                orbit_dim=orbit.orbit_dim,
                rel_cat=cat,
            )
        )

    if conjecture_used:
        assumptions.append(f"Sp conjecture assumed: {SP_CONJECTURE}")
    elif not bound_known and any(r.rel_cat.kind == "conjectured" for r in rows):
        notes.append("bound follows from the Sp conjecture; pass --assume-conjecture")

    upper: Optional[int] = None
    if bound_known:
        upper = sum((r.rel_cat.value or 0) + 1 for r in rows) - 1

    lower: Optional[int] = None
    lower_citation: Optional[str] = None
    if t.family == "C" and n >= 3:
        lower = n + 2
        lower_citation = (
            "cat(Sp(n)) >= n + 2 for n >= 3 (Fernandez-Suarez, Gomez-Tato, "
            "Strom, Tanre; Iwase-Mimura)"
        )

    known: Optional[tuple[int, str]] = _KNOWN_CATEGORIES.get((t.family, n))
    if t.family == "A":
        known = (n, "cat(SU(n+1)) = n (Singhof)")
    if t.family in ("B", "C"):
        notes.append("conjecturally cat(Sp(n)) = cat(Spin(2n+1))")

    report = BoundReport(
        lie_type=t,
        group=t.group_name,
        orbits=rows,
        upper_bound=upper,
        assumptions=assumptions,
        known_lower_bound=lower,
        lower_bound_citation=lower_citation,
        known_value=known[0] if known else None,
        known_value_citation=known[1] if known else None,
        notes=notes,
    )

    logger.info(f"LS bound for {t.group_name}: {report.upper_bound_label}")
    return report


def sp_conjectured_bound(n: int) -> int:
    """floor((n + 2)^2 / 4) - 1."""
    return (n + 2) ** 2 // 4 - 1
