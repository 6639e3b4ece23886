from .grid import BoundaryFactors, QMGrid
from .relation5 import (
    bridge_phase,
    compare_relation5,
    cross_ratio,
    relation5_lhs,
    relation5_rhs,
    relation5_rhs_matrix,
)
from .solver import (
    adiabatic_displacement,
    boundary_factors,
    eigenphase_error,
    eigenphase_refinement,
    ground_state,
    propagate_driven,
    rayleigh_energy,
)

__all__ = [
    "BoundaryFactors",
    "QMGrid",
    "adiabatic_displacement",
    "boundary_factors",
    "bridge_phase",
    "compare_relation5",
    "cross_ratio",
    "eigenphase_error",
    "eigenphase_refinement",
    "ground_state",
    "propagate_driven",
    "rayleigh_energy",
    "relation5_lhs",
    "relation5_rhs",
    "relation5_rhs_matrix",
]
