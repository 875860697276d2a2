"""SU(n+1): torus exponentials as exact phases, and the central vertex elements."""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from alcove_cat.affine_alcove import AlcoveGeometry
from alcove_cat.errors import PreconditionError

Phases = tuple[Fraction, ...]


def su_exp_phases(H: Sequence[Fraction]) -> Phases:
    """
    exp of a torus point of SU(n+1) as phases in turns:
    diag(e^{2 pi i H_j}) is recorded as (H_j mod 1).

    Raises:
        PreconditionError: If the coordinates do not sum to zero
    """
    if sum(H, Fraction(0)) != 0:
        raise PreconditionError(f"Torus point of SU(n+1) must have trace zero: {H}")
    return tuple(Fraction(h) % 1 for h in H)


def su_exp_matrix(H: Sequence[Fraction]) -> np.ndarray:
    """Complex diagonal matrix diag(e^{2 pi i H_j})."""
    return np.diag(np.exp(2j * np.pi * np.array([float(p) for p in su_exp_phases(H)])))


def central_phase(n: int, k: int) -> Fraction:
    """Phase of exp v_k = e^{-2 pi i k/(n+1)} Id, in turns mod 1."""
    return Fraction(-k, n + 1) % 1


def su_vertex_phases(geo: AlcoveGeometry, k: int) -> Phases:
    """Phases of exp v_k for the alcove vertices of an A_n geometry."""
    if geo.rs.lie_type.family != "A":
        raise PreconditionError(f"SU phases need family A, not {geo.rs.lie_type.name}")
    return su_exp_phases(geo.vertex(k))


def is_central(phases: Phases) -> bool:
    """A diagonal element is central exactly when all its phases agree."""
    return len(set(phases)) <= 1
