"""Concrete models of the compact groups: SU, Sp over the quaternions, Spin."""

from alcove_cat.realizations.clifford import (
    CliffordElement,
    clifford_conj,
    clifford_mul,
    is_spin,
    so_block_rotation,
    spin_exp_E,
    spin_rotor,
    spin_torus_exp,
    spin_vertex_element,
    vector_action,
)
from alcove_cat.realizations.grassmannian import (
    GrassPoint,
    grass_canonical,
    grass_retract,
    in_X,
    in_Y,
    orbit_plane,
    random_grass_point,
    tau_k,
)
from alcove_cat.realizations.quaternionic import (
    block_structure_check,
    is_symplectic,
    orbit_point,
    phi_embed,
    polar_sp_part,
    random_symplectic,
    reduced_norm,
    sp_exp_torus,
    sp_exp_vertex,
)
from alcove_cat.realizations.unitary import su_exp_matrix, su_exp_phases, su_vertex_phases

__all__ = [
    "CliffordElement",
    "GrassPoint",
    "block_structure_check",
    "clifford_conj",
    "clifford_mul",
    "grass_canonical",
    "grass_retract",
    "in_X",
    "in_Y",
    "is_spin",
    "is_symplectic",
    "orbit_plane",
    "orbit_point",
    "phi_embed",
    "polar_sp_part",
    "random_grass_point",
    "random_symplectic",
    "reduced_norm",
    "so_block_rotation",
    "sp_exp_torus",
    "sp_exp_vertex",
    "spin_exp_E",
    "spin_rotor",
    "spin_torus_exp",
    "spin_vertex_element",
    "su_exp_matrix",
    "su_exp_phases",
    "su_vertex_phases",
    "tau_k",
    "vector_action",
]
