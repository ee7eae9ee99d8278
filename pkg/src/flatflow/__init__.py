"""Flat-flow laboratory: minimizing-movement curvature flow with bounded forcing."""

from .grid import (
    Grid,
    GridSet,
    ScalarField,
    ball,
    band_containment,
    perimeter,
    schwarz_symmetrize,
    signed_distance,
    symmetric_difference_volume,
    volume,
)
from .solver import StepParams, StepReport, energy, mm_step, relaxed_minimize, threshold
from .flow import ForcingSchedule, Trajectory, check_comparison, evolve, is_stationary, step_average_forcing
from .axisym import Profile, neck_radius, profile_extract, rasterize_solid, revolution_mean_curvature
from .barrier import BarrierParams, barrier_sequence, barrier_set, fit_neck_growth, verify_barrier_inclusion

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "GridSet",
    "ScalarField",
    "ball",
    "band_containment",
    "perimeter",
    "schwarz_symmetrize",
    "signed_distance",
    "symmetric_difference_volume",
    "volume",
    "StepParams",
    "StepReport",
    "energy",
    "mm_step",
    "relaxed_minimize",
    "threshold",
    "ForcingSchedule",
    "Trajectory",
    "check_comparison",
    "evolve",
    "is_stationary",
    "step_average_forcing",
    "Profile",
    "neck_radius",
    "profile_extract",
    "rasterize_solid",
    "revolution_mean_curvature",
    "BarrierParams",
    "barrier_sequence",
    "barrier_set",
    "fit_neck_growth",
    "verify_barrier_inclusion",
    "__version__",
]
