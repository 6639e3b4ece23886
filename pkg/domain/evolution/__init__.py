from .pseudodynamics import (
    ConventionCalibration,
    EvolutionState,
    advance,
    calibrate,
    evolution_functional,
    solve_lambda_squared,
)

__all__ = [
    "ConventionCalibration",
    "EvolutionState",
    "advance",
    "calibrate",
    "evolution_functional",
    "solve_lambda_squared",
]
