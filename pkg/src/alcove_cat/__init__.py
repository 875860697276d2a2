"""
alcove-cat: fundamental alcoves, vertex conjugacy classes and
Lusternik-Schnirelmann category bounds for compact simple Lie groups.

For every simple simply connected compact group the package computes

    - root data, marks and the fundamental alcove of the affine Weyl group
    - the conjugacy classes O_k through the alcove vertices, their
      dimensions and homogeneous-space identifications
    - the resulting upper bound cat(G) <= sum_k (cat_G(O_k) + 1) - 1

and checks the finite combinatorial and matrix-model claims behind the
bound with seeded verification campaigns.

All alcove geometry is exact over the rationals; torus points are
rescaled so the kernel of exp is the coroot lattice itself.
"""

__version__ = "0.1.0"

from alcove_cat.models.lie_type import LieType
from alcove_cat.orbit_classifier import classify_vertices, ls_bound
from alcove_cat.root_system import RootSystem, build
from alcove_cat.storage.catalog import RootSystemCatalog

__all__ = [
    "LieType",
    "RootSystem",
    "RootSystemCatalog",
    "build",
    "classify_vertices",
    "ls_bound",
    "__version__",
]
