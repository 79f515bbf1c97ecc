"""Active flux finite-volume solver.

Third-order method-of-lines scheme for 1D/2D hyperbolic conservation laws
(linear advection, Burgers, compressible Euler).  Cell averages evolve with
point values carried on the cell boundaries; point values update through
flux-vector splitting or a Jacobian-splitting transport form, and optional
convex limiting keeps averages and points inside physical or maximum-principle
bounds.
"""
from .boundary import BoundarySpec, InternalWall, Side, fill_ghosts, outflow, periodic
from .cases import CASES, CaseSetup, l1_average_error, make_case, total_conserved
from .errors import (ActiveFluxError, BoundViolationError, ConfigError,
                     NegativeStateError, RetryExhaustedError,
                     StepConstraintViolation)
from .grid import DofField, Grid1D, Grid2D, allocate_dofs
from .march import BP_SCOPES, RunStats, SchemeConfig, Solver
from .splitting import KINDS, split
from .systems import Advection, Burgers, Euler, make_system

__version__ = "0.1.0"

__all__ = [
    "ActiveFluxError", "Advection", "BoundarySpec", "BoundViolationError",
    "BP_SCOPES", "Burgers", "CASES", "CaseSetup", "ConfigError", "DofField",
    "Euler", "Grid1D", "Grid2D", "InternalWall", "KINDS",
    "NegativeStateError", "RetryExhaustedError", "RunStats", "SchemeConfig",
    "Side", "Solver", "StepConstraintViolation", "allocate_dofs",
    "fill_ghosts", "l1_average_error", "make_case", "make_system", "outflow",
    "periodic", "split", "total_conserved",
]
