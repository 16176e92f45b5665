"""Cycle-time analysis of P-time event graphs and switched max-plus
linear-dual inequalities under periodic schedules."""

__version__ = "0.1.0"

from .dioid import EPSILON, NEG_INF, POS_INF, TOP, UNIT, format_scalar, parse_scalar
from .errors import (
    CycleTimeError,
    DimensionMismatchError,
    InconsistentPlacesError,
    InfeasibleLambdaError,
    InvalidArgumentError,
    InvalidInstanceError,
    MissingPrefixError,
    ModelParseError,
    ModelValidationError,
    TooLargeError,
    UnknownModeError,
    UnsupportedFormatError,
)
from .matrix import CircuitClass, has_positive_circuit, kleene_star, mcm
from .modelio import Model, emit_result, load_model
from .ncp import CycleTimeSet, PicInstance, oracle_ncp, solve_ncp
from .pteg import (
    Place,
    Pteg,
    PtegNet,
    check_ldi_trajectory,
    compile_net,
    cycle_time_set,
    synthesize_periodic,
)
from .sldi import (
    Sldi,
    check_sldi_trajectory,
    cycle_times_direct,
    cycle_times_improved,
    lift_direct,
    parse_schedule,
    synthesize_v_periodic,
)
from .trajectory import TrajectoryReport, Violation, render, unroll

__all__ = [name for name in dir() if not name.startswith("_")]
