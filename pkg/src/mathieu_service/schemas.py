from dataclasses import dataclass
from enum import Enum
import math

from .exceptions import InvalidParameterError


class CurveFamily(str, Enum):
    """特征曲线族: A 对应偶解 (a_n)，B 对应奇解 (b_n)"""

    A = "A"
    B = "B"


class StabilityClass(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class MathieuPoint:
    """Mathieu 图中的参数点 (q, a)，对应 ξ'' + (a + 2q cos 2t) ξ = 0"""

    q: float
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.a)):
            raise InvalidParameterError(f"Non-finite Mathieu point: q={self.q}, a={self.a}")
        if self.q < 0:
            raise InvalidParameterError(f"q must be non-negative, got {self.q}")


@dataclass(frozen=True)
class CharacteristicCurveId:
    """特征曲线标识，例如 (A, 0) 表示 a_0(q)，(B, 1) 表示 b_1(q)"""

    family: CurveFamily
    order: int

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 0:
            raise InvalidParameterError(f"Curve order must be a non-negative integer, got {self.order!r}")
        if self.family == CurveFamily.B and self.order == 0:
            raise InvalidParameterError("Curve b_0 does not exist (family B requires order >= 1)")

    @property
    def label(self) -> str:
        return f"{self.family.value.lower()}{self.order}"


@dataclass(frozen=True)
class MonodromyMatrix:
    """基本解矩阵在一个系数周期 π 末端的取值"""

    m11: float
    m12: float
    m21: float
    m22: float

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def determinant(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def as_rows(self) -> tuple:
        return ((self.m11, self.m12), (self.m21, self.m22))


@dataclass(frozen=True)
class StabilityVerdict:
    """稳定性判定结果"""

    stability: StabilityClass
    trace_magnitude: float
    margin: float  # trace_magnitude - 2

    @property
    def is_unstable(self) -> bool:
        return self.stability == StabilityClass.UNSTABLE
