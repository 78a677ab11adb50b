"""
resonance_service - 参数直线、激活区间与临界能量
"""

from .core import (
    activating_intervals,
    amplitude_of_energy,
    amplitude_of_q,
    crossings,
    diagram_points,
    energy_of_amplitude,
    energy_of_q,
    first_activation,
    first_stability_threshold,
    line_of,
    q_of_amplitude,
)
from .schemas import ActivatingInterval, Crossing, ModeSystem, ParametricLine
from .exceptions import ResonanceError, InvalidSystemError, IntervalScanError

__all__ = [
    "activating_intervals",
    "amplitude_of_energy",
    "amplitude_of_q",
    "crossings",
    "diagram_points",
    "energy_of_amplitude",
    "energy_of_q",
    "first_activation",
    "first_stability_threshold",
    "line_of",
    "q_of_amplitude",
    "ActivatingInterval",
    "Crossing",
    "ModeSystem",
    "ParametricLine",
    "ResonanceError",
    "InvalidSystemError",
    "IntervalScanError",
]
