"""Python bindings for the delone library."""

from ._delone import (
    DeloneError,
    PointPatch,
    antiprism_points,
    bound_lookup,
    bound_table,
    c4v_example,
    cluster_count,
    cluster_group,
    covering_radius,
    cubic_lattice,
    group_from_matrices,
    hex_bilattice,
    hex_lattice,
    local_criterion,
    optimize_lemma1,
    optimize_lemma2,
    packing_diameter,
    read_patch,
    shtogrin_step_bound,
    tower_bound_radius,
    write_patch,
)

__all__ = [
    "DeloneError",
    "PointPatch",
    "antiprism_points",
    "bound_lookup",
    "bound_table",
    "c4v_example",
    "cluster_count",
    "cluster_group",
    "covering_radius",
    "cubic_lattice",
    "group_from_matrices",
    "hex_bilattice",
    "hex_lattice",
    "local_criterion",
    "optimize_lemma1",
    "optimize_lemma2",
    "packing_diameter",
    "read_patch",
    "shtogrin_step_bound",
    "tower_bound_radius",
    "write_patch",
]
