"""Minimum-time bang-bang control of the double integrator ``x'' = u``, ``|u| <= 1``."""

from ._kernels import BACKEND
from .certificate import Certificate, VerificationReport, build_certificate, control_from_costate, hamiltonian_at, verify
from .closed_loop import Regulation, regulate
from .errors import (
    BangBangError,
    ConfigurationError,
    DomainError,
    GeometryError,
    NontrivialityError,
    OrderingError,
    PreconditionError,
    SaturationError,
    SearchFailure,
)
from .oracle import OracleResult, grid_search_min_time, integrate_numeric
from .scaling import ORIGIN, PhysicalConfig, PhysicalState, ScaledState, to_physical, to_scaled
from .synthesis import Bang, Case, Plan, classify, eval_F, feedback_control, plan, switch_state
from .trajectory import (
    Arc,
    ParabolaArc,
    TrajectorySample,
    parabola_constant,
    propagate_const,
    time_across_switch,
    time_between,
    trajectory_of_plan,
)

__version__ = "0.1.0"
