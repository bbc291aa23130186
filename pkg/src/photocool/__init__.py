"""Classical and quantum theory of photothermal cavity cooling, with a stochastic oracle."""
from .params import (CavitySpec, DriveSpec, MechanicalSpec, NormalizedParams, PhotothermalSpec,
                     SteadyState, System, denormalize, normalize, select_branch, solve_steady_state,
                     thermal_occupancy)

__version__ = "0.1.0"

__all__ = [
    "CavitySpec", "DriveSpec", "MechanicalSpec", "NormalizedParams", "PhotothermalSpec",
    "SteadyState", "System", "denormalize", "normalize", "select_branch", "solve_steady_state",
    "thermal_occupancy", "__version__",
]
