"""Statics and small-oscillation dynamics of no-tension (masonry-like) beams."""

from .constitutive import (
    AxialState,
    BeamSpec,
    curvature_of_moment,
    moment_of_curvature,
    tangent_stiffness,
)
from .closed_form import (
    DeflectionField,
    LoadCaseA,
    LoadCaseB,
    case_a_curvature,
    case_a_tip_deflection,
    case_b_deflection,
    case_b_tip_deflection,
    pushover_curve_first_order,
)
from .dynamics import (
    FrequencyResult,
    frequency_case_a,
    frequency_case_b,
    frequency_elastic,
)
from .exceptions import (
    BeyondCollapse,
    BeyondCriticalLoad,
    ConfigError,
    DomainNearCapacity,
    MasonryBeamError,
    SectionCapacityExceeded,
)
from .second_order import (
    SolverReport,
    SolverSettings,
    Status,
    collapse_horizontal_load,
    critical_axial_load,
    solve_case_a,
    solve_case_b,
)

__version__ = "0.1.0"

__all__ = [
    "AxialState",
    "BeamSpec",
    "BeyondCollapse",
    "BeyondCriticalLoad",
    "ConfigError",
    "DeflectionField",
    "DomainNearCapacity",
    "FrequencyResult",
    "LoadCaseA",
    "LoadCaseB",
    "MasonryBeamError",
    "SectionCapacityExceeded",
    "SolverReport",
    "SolverSettings",
    "Status",
    "case_a_curvature",
    "case_a_tip_deflection",
    "case_b_deflection",
    "case_b_tip_deflection",
    "collapse_horizontal_load",
    "critical_axial_load",
    "curvature_of_moment",
    "frequency_case_a",
    "frequency_case_b",
    "frequency_elastic",
    "moment_of_curvature",
    "pushover_curve_first_order",
    "solve_case_a",
    "solve_case_b",
    "tangent_stiffness",
]
