"""
mathieu_service - Mathieu 特征值与 Floquet 稳定性
"""

from .core import (
    characteristic_value,
    characteristic_spectrum,
    classify,
    classify_by_curves,
    classify_column,
    growth_rate,
    monodromy,
)
from .schemas import (
    CharacteristicCurveId,
    CurveFamily,
    MathieuPoint,
    MonodromyMatrix,
    StabilityClass,
    StabilityVerdict,
)
from .exceptions import (
    MathieuError,
    InvalidParameterError,
    CharacteristicValueError,
    MonodromyError,
)

__all__ = [
    "characteristic_value",
    "characteristic_spectrum",
    "classify",
    "classify_by_curves",
    "classify_column",
    "growth_rate",
    "monodromy",
    "CharacteristicCurveId",
    "CurveFamily",
    "MathieuPoint",
    "MonodromyMatrix",
    "StabilityClass",
    "StabilityVerdict",
    "MathieuError",
    "InvalidParameterError",
    "CharacteristicValueError",
    "MonodromyError",
]
