from dataclasses import dataclass, replace
from typing import Tuple
import math

from mathieu_service import CharacteristicCurveId
from .exceptions import InvalidSystemError


@dataclass(frozen=True)
class ModeSystem:
    """
    主模态 y 与两个残余模态 z_1, z_2 的物理配置

    y(0) = x0, z_i(0) = epsilon·x0，初速度均为 0。
    """

    mu: float
    lambda1: float
    lambda2: float
    epsilon: float
    x0: float

    def __post_init__(self):
        for name in ("mu", "lambda1", "lambda2", "epsilon", "x0"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidSystemError(f"{name} must be finite, got {getattr(self, name)}")
        if self.mu <= 0 or self.lambda1 <= 0 or self.lambda2 <= 0:
            raise InvalidSystemError(
                f"Frequencies must be positive: mu={self.mu}, lambda1={self.lambda1}, lambda2={self.lambda2}"
            )
        if self.epsilon < 0:
            raise InvalidSystemError(f"epsilon must be non-negative, got {self.epsilon}")

    def frequency(self, mode_index: int) -> float:
        """残余模态 i 的线性频率 λ_i"""
        if mode_index == 1:
            return self.lambda1
        if mode_index == 2:
            return self.lambda2
        raise InvalidSystemError(f"mode_index must be 1 or 2, got {mode_index}")

    def with_amplitude(self, x0: float) -> "ModeSystem":
        return replace(self, x0=x0)


@dataclass(frozen=True)
class ParametricLine:
    """
    能量增大时 (q, α_i) 在 Mathieu 图中走过的直线 a = λ_i²/μ² + 2q

    coupling 为势能中 y²z_i² 项的权重 (γ 或 β)，只改变 x0 ↔ q 的换算。
    """

    mode_index: int
    intercept: float
    mu: float
    coupling: float = 1.0

    def __post_init__(self):
        if self.intercept <= 0:
            raise InvalidSystemError(f"Line intercept must be positive, got {self.intercept}")
        if self.coupling <= 0:
            raise InvalidSystemError(f"Coupling must be positive, got {self.coupling}")

    @property
    def slope(self) -> float:
        return 2.0

    def at(self, q: float) -> float:
        return self.intercept + self.slope * q


@dataclass(frozen=True)
class ActivatingInterval:
    """残余模态 i 的一个激活区间，同时以 q、x0、E 三种坐标给出"""

    mode_index: int
    region_order: int
    q_range: Tuple[float, float]
    x0_range: Tuple[float, float]
    energy_range: Tuple[float, float]
    truncated: bool = False  # 右端点超出扫描上限
    narrow: bool = False

    @property
    def x0_width(self) -> float:
        return self.x0_range[1] - self.x0_range[0]

    def contains_x0(self, x0: float) -> bool:
        return self.x0_range[0] < abs(x0) < self.x0_range[1]


@dataclass(frozen=True)
class Crossing:
    """参数直线与特征曲线的交点 (图中的 A, B, C ...)"""

    label: str
    mode_index: int
    curve: CharacteristicCurveId
    q: float
    a: float
    x0: float
    energy: float
