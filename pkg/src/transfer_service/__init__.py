"""
transfer_service - 残余模态能量捕获检测与 x0 扫描
"""

from .core import (
    agreement_of,
    detect,
    is_excluded,
    name_intervals,
    predicted_bands,
    predicted_modes,
    prediction_intervals,
    sweep,
)
from .schemas import Agreement, ModeGrowth, Rmce, RmceBand, RmceVerdict, SweepRow
from .utils import SWEEP_COLUMNS, format_rmce_table, write_sweep_csv
from .exceptions import DetectionError, UndefinedGrowthError

__all__ = [
    "agreement_of",
    "detect",
    "is_excluded",
    "name_intervals",
    "predicted_bands",
    "predicted_modes",
    "prediction_intervals",
    "sweep",
    "Agreement",
    "ModeGrowth",
    "Rmce",
    "RmceBand",
    "RmceVerdict",
    "SweepRow",
    "SWEEP_COLUMNS",
    "format_rmce_table",
    "write_sweep_csv",
    "DetectionError",
    "UndefinedGrowthError",
]
