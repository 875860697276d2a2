"""
Verification campaigns over the alcove geometry and the matrix models.

Each check is a finite certificate at the scale chosen by the plan. Random
choices come from one ``random.Random(plan.seed)`` shared across the checks
in plan order, so a plan always reproduces the same report. Failures carry
the data needed to re-run the failing operation on its own.
"""

import logging
import random
import time
from collections.abc import Callable
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from alcove_cat.affine_alcove import AlcoveGeometry, BallElement, geometry
from alcove_cat.config import AlcoveCatConfig, default_config
from alcove_cat.errors import AlcoveCatError, UnsupportedCheckError
from alcove_cat.exact_core import QMat, QuatMatrix, QVec, lerp
from alcove_cat.models.verify import (
    CheckName,
    CheckResult,
    VerifyPlan,
    VerifyReport,
    check_supported,
)
from alcove_cat.orbit_classifier import classify_vertex
from alcove_cat.realizations.clifford import (
    as_float_matrix,
    negated_first_coordinate,
    so_block_rotation,
    spin_exp_E,
    spin_torus_exp,
    vector_action,
    vertex_block_matrix,
)
from alcove_cat.realizations.grassmannian import (
    GrassPoint,
    covering_indices,
    grass_retract,
    in_Y,
    orbit_plane,
    random_grass_point,
    tau_k,
)
from alcove_cat.realizations.quaternionic import (
    block_structure_check,
    embed_fixing,
    orbit_point,
    random_symplectic,
    transposition,
)
from alcove_cat.root_system import RootSystem, build
from alcove_cat.utils import jsonable

logger = logging.getLogger(__name__)

RETRACT_PARAMETERS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def _passed(check: CheckName, instances: int, detail: str) -> CheckResult:
    return CheckResult(check=check, passed=True, instances=instances, detail=detail)


def _failed(
    check: CheckName, instances: int, detail: str, counterexample: dict[str, Any]
) -> CheckResult:
    logger.error(f"{check} failed: {detail}; counterexample {counterexample}")
    return CheckResult(
        check=check,
        passed=False,
        instances=instances,
        detail=detail,
        counterexample=jsonable(counterexample),
    )


def _quat_rows(rep: QuatMatrix) -> list[list[str]]:
    return [[str(q) for q in row] for row in rep.rows]


def _near_vertex(rs: RootSystem, p: QVec, v: QVec) -> bool:
    """
    Necessary condition for p to lie in an alcove whose closure contains v:
    every positive root differs by at most 1 between p and v.
    """
    return all(abs(rs.pair(a, p) - rs.pair(a, v)) <= 1 for a in rs.positive_roots)


# ---------------------------------------------------------------------------
# Alcove checks
# ---------------------------------------------------------------------------


def lemma33_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """
    Alcoves whose closure contains v_k, found among all affine Weyl
    elements up to a word length, are exactly the W_k-translates of A0.

    Elements of W_k have length at most |Delta+| in the wall reflections, so
    a ball of radius min(2|W_k|, |Delta+| + 1) contains all of them and at
    least one layer beyond.
    """
    rs = geo.rs
    instances = 0
    details = []
    for k in range(geo.n + 1):
        v = geo.vertex(k)
        stab = geo.stabilizer(k)
        radius = min(2 * stab.order, len(rs.positive_roots) + 1)
        ball = geo.enumerate_ball(radius)
        found = {b.element for b in ball if geo.in_closed_alcove(b.inverse(v))}
        instances += len(ball)
        extra = found - stab.element_set
        missing = stab.element_set - found
        if extra or missing:
            witness = next(iter(extra or missing))
            return _failed(
                "lemma33",
                instances,
                f"k={k}: {len(found)} alcoves at v_{k} but |W_{k}| = {stab.order}",
                {
                    "k": k,
                    "element": witness.to_dict(),
                    "contains_vertex": witness in found,
                    "in_stabilizer": witness in stab,
                },
            )
        details.append(f"v{k}:{len(found)}")
    return _passed("lemma33", instances, "alcoves at vertex = |W_k|: " + " ".join(details))


def _stray_hyperplane(rs: RootSystem, p: QVec, v: QVec) -> Optional[tuple[QVec, Fraction]]:
    """An affine root hyperplane {alpha(H) = c} through p that misses v, if any."""
    for alpha in rs.positive_roots:
        c = rs.pair(alpha, p)
        if c.denominator == 1 and rs.pair(alpha, v) != c:
            return alpha, c
    return None


def prop34b_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """
    Every affine root hyperplane through a point of C_k passes through v_k.

    Sampled cell points must be accepted by ``in_cell``. Images of the face
    barycenters under short affine Weyl words are tested whenever ``in_cell``
    accepts them, so a cell predicate that is too generous is caught too.
    """
    rs = geo.rs
    instances = 0
    for i in range(plan.samples):
        k = i % (geo.n + 1)
        v = geo.vertex(k)
        p = geo.sample_cell_point(k, rng, plan.grid_denominator, plan.boundary_rate)
        instances += 1
        if not geo.in_cell(k, p):
            return _failed(
                "prop34b", instances, f"sampled point of C_{k} rejected", {"k": k, "point": p}
            )
        stray = _stray_hyperplane(rs, p, v)
        if stray:
            return _failed(
                "prop34b",
                instances,
                f"hyperplane through a point of C_{k} misses v_{k}",
                {"k": k, "point": p, "root": stray[0], "level": stray[1]},
            )

    ball = geo.enumerate_ball(min(2, plan.word_length_bound))
    for k in range(geo.n + 1):
        v = geo.vertex(k)
        for j in range(geo.n + 1):
            bary = geo.face_barycenter(j)
            for b in ball:
                instances += 1
                q = b.element(bary)
                if not geo.in_cell(k, q):
                    continue
                stray = _stray_hyperplane(rs, q, v)
                if stray:
                    return _failed(
                        "prop34b",
                        instances,
                        f"hyperplane through a point accepted in C_{k} misses v_{k}",
                        {
                            "k": k,
                            "face": j,
                            "element": b.element.to_dict(),
                            "point": q,
                            "root": stray[0],
                            "level": stray[1],
                        },
                    )
    return _passed(
        "prop34b",
        instances,
        f"{plan.samples} cell points and face images of {len(ball)} elements: "
        "hyperplanes through C_k pass through v_k",
    )


def _cell_preserving(
    geo: AlcoveGeometry, ball: list[BallElement], k: int, u: QVec
) -> list[BallElement]:
    v = geo.vertex(k)
    return [
        b
        for b in ball
        if _near_vertex(geo.rs, b.element(u), v) and geo.in_cell(k, b.element(u))
    ]


def prop34c_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """If u and w(u) both lie in C_k then w fixes v_k (w in the word-length ball)."""
    ball = geo.enumerate_ball(plan.word_length_bound)
    instances = 0
    for i in range(plan.samples):
        k = i % (geo.n + 1)
        v = geo.vertex(k)
        u = geo.sample_cell_point(k, rng, plan.grid_denominator, plan.boundary_rate)
        for b in ball:
            instances += 1
            if b.element(v) == v:
                continue
            p = b.element(u)
            if _near_vertex(geo.rs, p, v) and geo.in_cell(k, p):
                return _failed(
                    "prop34c",
                    instances,
                    f"w maps a point of C_{k} into C_{k} but moves v_{k}",
                    {"k": k, "point": u, "element": b.element.to_dict()},
                )
    return _passed(
        "prop34c",
        instances,
        f"{plan.samples} cell points against {len(ball)} elements of length <= "
        f"{plan.word_length_bound}",
    )


def prop34d_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """Every point of the barycentric grid on the closed alcove lies in some C_k."""
    grid = geo.barycentric_grid(plan.grid_denominator)
    for i, p in enumerate(grid, start=1):
        if not any(geo.in_cell(k, p) for k in range(geo.n + 1)):
            return _failed("prop34d", i, "grid point in no cell", {"point": p})
    return _passed(
        "prop34d", len(grid), f"grid of denominator {plan.grid_denominator} covered"
    )


def thm41_welldef_check(
    rs: RootSystem,
    k: int,
    trials: int,
    *,
    seed: int = 7,
    word_length_bound: int = 8,
    grid_denominator: int = 12,
    boundary_rate: float = 0.25,
    rng: Optional[random.Random] = None,
    config: Optional[AlcoveCatConfig] = None,
) -> CheckResult:
    """
    Torus-level well-definedness of the retraction of C_k onto v_k.

    For u in C_k and w with w(u) in C_k, w fixes v_k and carries the
    retraction segment of u onto that of w(u):
    w((1 - s)u + s v_k) = (1 - s)w(u) + s v_k.
    """
    geo = geometry(rs, config)
    rng = rng or random.Random(seed)
    v = geo.vertex(k)
    ball = geo.enumerate_ball(word_length_bound)
    instances = 0
    for _ in range(trials):
        u = geo.sample_cell_point(k, rng, grid_denominator, boundary_rate)
        b = rng.choice(_cell_preserving(geo, ball, k, u))
        w = b.element
        if w(v) != v:
            return _failed(
                "thm41_welldef",
                instances + 1,
                f"w relates two points of C_{k} but moves v_{k}",
                {"k": k, "point": u, "element": w.to_dict()},
            )
        extra = Fraction(rng.randint(0, grid_denominator), grid_denominator)
        for s in RETRACT_PARAMETERS + (extra,):
            instances += 1
            lhs = w(geo.retract_torus(k, u, s))
            rhs = geo.retract_torus(k, w(u), s)
            if lhs != rhs or rhs != lerp(w(u), v, s):
                return _failed(
                    "thm41_welldef",
                    instances,
                    f"retraction segments disagree at s={s}",
                    {"k": k, "point": u, "s": s, "element": w.to_dict()},
                )
    return _passed("thm41_welldef", instances, f"k={k}: {trials} trials")


def _thm41_all(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    trials = max(1, plan.samples // (geo.n + 1))
    instances = 0
    for k in range(geo.n + 1):
        result = thm41_welldef_check(
            geo.rs,
            k,
            trials,
            word_length_bound=plan.word_length_bound,
            grid_denominator=plan.grid_denominator,
            boundary_rate=plan.boundary_rate,
            rng=rng,
            config=geo.config,
        )
        instances += result.instances
        if not result.passed:
            return result.model_copy(update={"instances": instances})
    return _passed(
        "thm41_welldef", instances, f"{trials} trials per vertex, {geo.n + 1} vertices"
    )


# ---------------------------------------------------------------------------
# Model checks
# ---------------------------------------------------------------------------


def _retract_plane(j: int, k: int, x: GrassPoint) -> Optional[str]:
    """Problem with the retraction of x along row j, or None."""
    try:
        if grass_retract(j, k, x, 0) != x:
            return "retraction is not the identity at s=0"
        for s in RETRACT_PARAMETERS[1:-1]:
            grass_retract(j, k, x, s)
        if not in_Y(j, k, grass_retract(j, k, x, 1)):
            return f"retraction at s=1 is not in Y_{j},{k}"
    except AlcoveCatError as e:
        return str(e)
    return None


def _plane_with_zero_row(n: int, j: int, rng: random.Random) -> QuatMatrix:
    """A symplectic g whose first k columns (any k < n) have row j zero."""
    g = embed_fixing(random_symplectic(n - 1, rng), j)
    return g @ transposition(n, j - 1, n - 1)


def grass_cover_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """
    Cover of Gr_k(H^n) by the complements of X_{1,k}..X_{k+1,k}, the
    retraction onto Y_{j,k}, and the orbit-level description of its preimage.
    """
    n = geo.n
    if n < 2:
        return _passed("grass_cover", 0, "Gr_k(H^1) has no proper planes")
    instances = 0
    for k in range(1, n):
        for _ in range(plan.samples):
            instances += 1
            x = random_grass_point(n, k, rng)
            indices = covering_indices(k, x)
            if not indices:
                return _failed(
                    "grass_cover",
                    instances,
                    f"plane lies in every X_j,{k}",
                    {"n": n, "k": k, "plane": _quat_rows(x.rep)},
                )
            j = rng.choice(indices)
            problem = _retract_plane(j, k, x)
            if problem:
                return _failed(
                    "grass_cover",
                    instances,
                    problem,
                    {"n": n, "k": k, "j": j, "plane": _quat_rows(x.rep)},
                )

    pairs = max(1, plan.samples // 20)
    for i in range(pairs):
        for k in range(1, n):
            j = rng.randint(1, n)
            g = random_symplectic(n, rng) if i % 2 else _plane_with_zero_row(n, j, rng)
            instances += 1
            x = orbit_point(g, k)
            plane = orbit_plane(x, k)
            if plane != tau_k(g, k):
                return _failed(
                    "grass_cover",
                    instances,
                    "eigenspace of g exp(v_k) g* differs from the columns of g",
                    {"n": n, "k": k, "g": _quat_rows(g)},
                )
            if 2 * k <= n and block_structure_check(x, j, k) != in_Y(j, k, plane):
                return _failed(
                    "grass_cover",
                    instances,
                    f"block form at row {j} disagrees with membership in Y_{j},{k}",
                    {"n": n, "k": k, "j": j, "x": _quat_rows(x)},
                )
    return _passed(
        "grass_cover",
        instances,
        f"{plan.samples} planes per k in 1..{n - 1}, {pairs} symplectic witnesses",
    )


def _matrices_agree(a: Any, b: Any, tol: float) -> bool:
    if isinstance(a, QMat) and isinstance(b, QMat):
        return a == b
    return bool(np.allclose(as_float_matrix(a), as_float_matrix(b), atol=tol))


def spin_double_cover_check(
    geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random
) -> CheckResult:
    """
    exp_SO = A o exp on the quarter-turn grid, A(exp v_k) = diag(-I_2k, I),
    and the two-point fiber {exp v_k, -exp v_k} over A(exp v_k).
    """
    family, n = geo.rs.lie_type.family, geo.n
    m = 2 * n + 1 if family == "B" else 2 * n
    tol = geo.config.float_tolerance
    instances = 0

    for plane in range(1, n + 1):
        for quarter in range(8):
            instances += 1
            turns = Fraction(quarter, 4)
            exact = (2 * turns).denominator == 1
            spin = spin_exp_E(turns if exact else float(turns), plane, m, exact=exact)
            if not _matrices_agree(vector_action(spin), so_block_rotation(turns, plane, m), tol):
                return _failed(
                    "spin_double_cover",
                    instances,
                    f"A(exp(theta E_{plane})) differs from the rotation at {turns} turns",
                    {"m": m, "plane": plane, "turns": turns},
                )

    for k in range(2, n + 1):
        instances += 1
        v = geo.vertex(k)
        g = spin_torus_exp(v, m)
        block = n if family == "D" and k == n - 1 else k
        expected = vertex_block_matrix(block, m)
        flipped = spin_torus_exp(negated_first_coordinate(v), m)
        problem = None
        if vector_action(g) != expected:
            problem = f"A(exp v_{k}) is not diag(-I_{2 * block}, I_{m - 2 * block})"
        elif flipped != -g:
            problem = f"the reflected vertex does not exponentiate to -exp v_{k}"
        elif vector_action(-g) != vector_action(g) or g == -g:
            problem = f"exp v_{k} and its negative do not form a two-point fiber"
        if problem:
            return _failed(
                "spin_double_cover",
                instances,
                problem,
                {"m": m, "k": k, "vertex": v, "element": str(g)},
            )
    return _passed(
        "spin_double_cover", instances, f"Spin({m}): rotation grid and vertices 2..{n}"
    )


def expected_orbit_dimension(family: str, n: int, k: int) -> int:
    """Dimension of the Grassmannian that O_k is identified with (0 when central)."""
    if family == "C":
        return 4 * k * (n - k)
    if family == "B":
        return 2 * k * (2 * n + 1 - 2 * k) if k >= 2 else 0
    if family == "D":
        return 2 * k * (2 * n - 2 * k) if 2 <= k <= n - 2 else 0
    return 0


def dim_identity_check(geo: AlcoveGeometry, plan: VerifyPlan, rng: random.Random) -> CheckResult:
    """|Delta| - |Sigma_{v_k}| against the dimension of the identified space."""
    family, n = geo.rs.lie_type.family, geo.n
    dims = []
    for k in range(n + 1):
        orbit = classify_vertex(geo.rs, k)
        expected = expected_orbit_dimension(family, n, k)
        named = orbit.identification.dimension
        if orbit.orbit_dim != expected or (named is not None and named != expected):
            return _failed(
                "dim_identity",
                k + 1,
                f"O_{k}: |Delta| - |Sigma| = {orbit.orbit_dim}, expected {expected}",
                {"k": k, "orbit_dim": orbit.orbit_dim, "expected": expected},
            )
        dims.append(orbit.orbit_dim)
    return _passed("dim_identity", n + 1, f"orbit dimensions {dims}")


CHECKS: dict[str, Callable[[AlcoveGeometry, VerifyPlan, random.Random], CheckResult]] = {
    "lemma33": lemma33_check,
    "prop34b": prop34b_check,
    "prop34c": prop34c_check,
    "prop34d": prop34d_check,
    "thm41_welldef": _thm41_all,
    "grass_cover": grass_cover_check,
    "spin_double_cover": spin_double_cover_check,
    "dim_identity": dim_identity_check,
}


def run(plan: VerifyPlan, config: Optional[AlcoveCatConfig] = None) -> VerifyReport:
    """
    Run every check of the plan in order.

    Raises:
        UnsupportedCheckError: If a check does not apply to the plan's family
    """
    cfg = config or default_config()
    unsupported = [c for c in plan.checks if not check_supported(c, plan.lie_type)]
    if unsupported:
        raise UnsupportedCheckError(
            f"Checks {unsupported} do not apply to family {plan.lie_type.family}"
        )

    geo = geometry(build(plan.lie_type, cfg), cfg)
    rng = random.Random(plan.seed)
    report = VerifyReport(lie_type=plan.lie_type, seed=plan.seed)
    for check in plan.checks:
        logger.info(f"Running {check} on {plan.lie_type}")
        start = time.perf_counter()
        result = CHECKS[check](geo, plan, rng)
        elapsed = time.perf_counter() - start
        report.results.append(result.model_copy(update={"duration_seconds": elapsed}))
        logger.info(
            f"{check}: {'pass' if result.passed else 'FAIL'} "
            f"({result.instances} instances, {elapsed:.2f}s)"
        )
    return report
