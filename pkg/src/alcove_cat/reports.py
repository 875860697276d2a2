"""
JSON-ready summaries and text renderings shared by the CLI and the server.

Every ``*_data`` function returns plain dicts and lists whose fractions are
serialized by ``safe_json_dumps``; the matching ``*_text`` function renders
the same data as a table.
"""

import logging
from typing import Any, Literal, Optional

from alcove_cat.affine_alcove import AlcoveGeometry
from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import AlcoveCatError, PreconditionError
from alcove_cat.models.lie_type import LieType
from alcove_cat.models.orbit import BoundReport, VertexOrbit
from alcove_cat.models.verify import VerifyReport
from alcove_cat.orbit_classifier import (
    classify_subsystem,
    classify_vertices,
    subsystem_weyl_order,
    vertex_subsystem,
)
from alcove_cat.realizations.clifford import spin_vertex_element, vector_action
from alcove_cat.realizations.quaternionic import is_symplectic, sp_exp_vertex
from alcove_cat.realizations.unitary import central_phase, su_vertex_phases
from alcove_cat.root_system import RootSystem
from alcove_cat.utils import format_fraction, format_table, format_vector

logger = logging.getLogger(__name__)

Model = Literal["quat", "clifford", "so", "complex"]

MODELS_BY_FAMILY: dict[str, tuple[str, ...]] = {
    "A": ("complex",),
    "B": ("clifford", "so"),
    "C": ("quat",),
    "D": ("clifford", "so"),
}


# ---------------------------------------------------------------------------
# Root data
# ---------------------------------------------------------------------------


def root_data(rs: RootSystem) -> dict[str, Any]:
    data = rs.to_dict()
    data["num_positive_roots"] = len(rs.positive_roots)
    return data


def root_text(rs: RootSystem) -> str:
    lines = [
        f"{rs.lie_type.name} ({rs.lie_type.group_name})",
        f"  |Delta| = {len(rs.roots)}, |Delta+| = {len(rs.positive_roots)}",
        f"  highest root alpha_0 = {format_vector(rs.highest_root)}",
        f"  coordinates: {'epsilon' if rs.lie_type.is_classical else 'simple-root'}",
        "",
    ]
    rows = [
        [i, format_vector(a), rs.cartan_matrix[i - 1]]
        for i, a in enumerate(rs.simple_roots, start=1)
    ]
    lines.append(format_table(["i", "simple root", "Cartan row"], rows))
    return "\n".join(lines)


def marks_data(rs: RootSystem) -> dict[str, Any]:
    return {
        "lie_type": rs.lie_type.name,
        "marks": list(rs.marks),
        "max_mark": max(rs.marks),
    }


def marks_text(rs: RootSystem) -> str:
    rows = [[k, m] for k, m in enumerate(rs.marks, start=1)]
    return f"{rs.lie_type.name}: alpha_0 = sum m_k alpha_k\n" + format_table(["k", "m_k"], rows)


# ---------------------------------------------------------------------------
# Alcove
# ---------------------------------------------------------------------------


def stabilizer_orders(
    geo: AlcoveGeometry, config: Optional[AlcoveCatConfig] = None
) -> list[dict[str, Any]]:
    """
    |W_k| per vertex. Enumerated by BFS when the Weyl order of the vertex
    subsystem is within the configured threshold, otherwise taken from it.
    """
    cfg = config or default_config()
    out = []
    for k in range(geo.n + 1):
        components = classify_subsystem(geo.rs, vertex_subsystem(geo.rs, k))
        predicted = subsystem_weyl_order(components)
        if predicted <= cfg.alcove_bfs_threshold:
            order, method = geo.stabilizer(k).order, "bfs"
        else:
            order, method = predicted, "weyl_order"
            logger.warning(
                f"|W_{k}| = {predicted} exceeds the BFS threshold; reporting the Weyl order"
            )
        out.append(
            {
                "k": k,
                "order": order,
                "method": method,
                "type": "x".join(t.name for t in components) or "1",
            }
        )
    return out


def alcove_data(geo: AlcoveGeometry, config: Optional[AlcoveCatConfig] = None) -> dict[str, Any]:
    return {
        "lie_type": geo.rs.lie_type.name,
        "vertices": [list(v) for v in geo.vertex_set],
        "faces": [
            {"index": w.index, "alpha": list(w.alpha), "level": w.level} for w in geo.walls
        ],
        "stabilizers": stabilizer_orders(geo, config),
    }


def alcove_text(data: dict[str, Any]) -> str:
    rows = []
    for v, face, stab in zip(data["vertices"], data["faces"], data["stabilizers"]):
        eq = f"alpha_0 = {face['level']}" if face["index"] == 0 else f"alpha_{face['index']} = 0"
        rows.append([stab["k"], format_vector(v), eq, stab["type"], stab["order"]])
    return f"Fundamental alcove of {data['lie_type']}\n" + format_table(
        ["k", "vertex v_k", "face F_k", "W_k type", "|W_k|"], rows
    )


# ---------------------------------------------------------------------------
# Orbits and bound
# ---------------------------------------------------------------------------


def orbits_data(rs: RootSystem) -> list[dict[str, Any]]:
    orbits = classify_vertices(rs)
    return [_orbit_entry(o) for o in orbits]


def _orbit_entry(o: VertexOrbit) -> dict[str, Any]:
    return {
        "k": o.k,
        "vertex": list(o.vertex),
        "stabilizer": o.stabilizer_label,
        "is_central": o.is_central,
        "orbit_dim": o.orbit_dim,
        "identification": o.identification.label,
        "rel_cat": str(o.rel_cat),
    }


def orbits_text(lie_type: LieType, entries: list[dict[str, Any]]) -> str:
    rows = [
        [e["k"], e["identification"], e["orbit_dim"], e["stabilizer"], e["rel_cat"]]
        for e in entries
    ]
    return f"Orbits O_k of {lie_type.group_name}\n" + format_table(
        ["k", "identification", "dim", "stabilizer", "cat_G(O_k)"], rows
    )


def bound_data(report: BoundReport) -> dict[str, Any]:
    data = report.model_dump(mode="json")
    data["lie_type"] = report.lie_type.name
    data["upper_bound_label"] = report.upper_bound_label
    return data


def bound_text(report: BoundReport) -> str:
    rows = [
        [o.k, o.identification.label, o.orbit_dim, str(o.rel_cat)] for o in report.orbits
    ]
    lines = [
        f"LS-category bound for {report.group}",
        format_table(["k", "identification", "dim", "cat_G(O_k)"], rows),
        "",
        f"cat({report.group}) <= {report.upper_bound_label}",
    ]
    if report.known_value is not None:
        lines.append(
            f"known: cat({report.group}) = {report.known_value} "
            f"({report.known_value_citation})"
        )
    if report.known_lower_bound is not None:
        lines.append(f"lower bound: {report.known_lower_bound} ({report.lower_bound_citation})")
    lines.extend(f"assumption: {a}" for a in report.assumptions)
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Realizations
# ---------------------------------------------------------------------------


def default_model(lie_type: LieType) -> str:
    models = MODELS_BY_FAMILY.get(lie_type.family)
    if not models:
        raise PreconditionError(f"No matrix realization for exceptional type {lie_type.name}")
    return models[0]


def realize_data(geo: AlcoveGeometry, k: int, model: Optional[str] = None) -> dict[str, Any]:
    """
    exp v_k in a concrete model of the simply connected group.

    Raises:
        PreconditionError: For exceptional types or k out of range
        AlcoveCatError: If the model does not fit the family
    """
    lie_type = geo.rs.lie_type
    model = model or default_model(lie_type)
    allowed = MODELS_BY_FAMILY.get(lie_type.family, ())
    if model not in allowed:
        raise AlcoveCatError(
            f"Model {model!r} does not realize {lie_type.group_name}; use one of {list(allowed)}"
        )
    n = lie_type.rank
    if not 0 <= k <= n:
        raise PreconditionError(f"Vertex index {k} outside 0..{n}")
    data: dict[str, Any] = {
        "lie_type": lie_type.name,
        "group": lie_type.group_name,
        "k": k,
        "model": model,
    }
    if model == "complex":
        phases = su_vertex_phases(geo, k)
        data["phases"] = list(phases)
        data["central_phase"] = central_phase(n, k)
    elif model == "quat":
        g = sp_exp_vertex(n, k)
        data["matrix"] = [[str(q) for q in row] for row in g.rows]
        data["symplectic"] = is_symplectic(g)
    else:
        g_spin = spin_vertex_element(geo, k)
        if model == "clifford":
            data["element"] = str(g_spin)
        else:
            data["matrix"] = [list(row) for row in vector_action(g_spin).rows]
    return data


def realize_text(data: dict[str, Any]) -> str:
    head = f"exp v_{data['k']} in {data['group']} ({data['model']} model)"
    if "phases" in data:
        phases = ", ".join(format_fraction(p) for p in data["phases"])
        return f"{head}\n  phases (turns): {phases}\n  = e^(2 pi i * {data['central_phase']}) Id"
    if "element" in data:
        return f"{head}\n  {data['element']}"
    body = "\n".join("  [" + ", ".join(str(x) for x in row) + "]" for row in data["matrix"])
    return f"{head}\n{body}"


def verify_text(report: VerifyReport) -> str:
    rows = [
        [
            r.check,
            "pass" if r.passed else "FAIL",
            r.instances,
            f"{r.duration_seconds:.2f}s",
            r.detail,
        ]
        for r in report.results
    ]
    lines = [
        f"Verification of {report.lie_type.name} (seed {report.seed})",
        format_table(["check", "status", "instances", "time", "detail"], rows),
    ]
    for r in report.failures:
        lines.append(f"counterexample for {r.check}: {r.counterexample}")
    return "\n".join(lines)
