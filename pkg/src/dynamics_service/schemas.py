from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple
import math

import numpy as np

from config.app_config import (
    DRIFT_BOUND,
    INTEGRATION_ATOL,
    INTEGRATION_METHOD,
    INTEGRATION_RTOL,
    VERLET_STEP,
)
from mathieu_service import MathieuPoint
from resonance_service import ModeSystem
from .exceptions import DynamicsError
from .potentials import Potential

# 状态向量中的分量顺序，也是轨迹 CSV 的列顺序
STATE_FIELDS = ("y", "z1", "z2", "vy", "vz1", "vz2")
BACKENDS = ("adaptive", "verlet")


@dataclass(frozen=True)
class State:
    """六维相空间中的一个点及其时间"""

    y: float
    z1: float
    z2: float
    vy: float = 0.0
    vz1: float = 0.0
    vz2: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        for name in STATE_FIELDS + ("t",):
            if not math.isfinite(getattr(self, name)):
                raise DynamicsError(f"State component {name} must be finite, got {getattr(self, name)}")

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in STATE_FIELDS], dtype=float)

    @classmethod
    def from_vector(cls, vector, t: float = 0.0) -> "State":
        return cls(*(float(v) for v in vector), t=float(t))

    @classmethod
    def initial(cls, system: ModeSystem) -> "State":
        """y(0) = x0, z_i(0) = εx0，静止出发"""
        residual = system.epsilon * system.x0
        return cls(y=system.x0, z1=residual, z2=residual)


@dataclass(frozen=True)
class IntegrationSettings:
    """积分器设置; sample_step 为 None 时按最快线性频率自动选取"""

    method: str = INTEGRATION_METHOD
    rtol: float = INTEGRATION_RTOL
    atol: float = INTEGRATION_ATOL
    drift_bound: float = DRIFT_BOUND
    backend: str = "adaptive"
    verlet_step: float = VERLET_STEP
    sample_step: Optional[float] = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise DynamicsError(f"Unknown integration backend {self.backend!r}, expected one of {BACKENDS}")
        if not (self.rtol > 0 and self.atol > 0 and self.drift_bound > 0 and self.verlet_step > 0):
            raise DynamicsError("Integration tolerances and steps must be positive")
        if self.sample_step is not None and not self.sample_step > 0:
            raise DynamicsError(f"sample_step must be positive, got {self.sample_step}")


@dataclass(frozen=True)
class TrajectoryMeta:
    system: ModeSystem
    potential: Potential
    settings: IntegrationSettings


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    非线性积分结果

    states 的形状为 (len(t), 6)，列顺序见 STATE_FIELDS；energy 为每个采样点的总能量。
    """

    t: np.ndarray
    states: np.ndarray
    energy: np.ndarray
    meta: TrajectoryMeta
    energy_drift: float
    degraded: bool = False

    @property
    def y(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def z1(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def z2(self) -> np.ndarray:
        return self.states[:, 2]

    def residual(self, mode_index: int) -> np.ndarray:
        if mode_index not in (1, 2):
            raise DynamicsError(f"mode_index must be 1 or 2, got {mode_index}")
        return self.states[:, mode_index]

    def state_at(self, index: int) -> State:
        return State.from_vector(self.states[index], t=self.t[index])

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class LinearizedSystem:
    """
    沿主模态解 (x0 cos μt, 0, 0) 的线性化

    coefficients[i](t) = λ_i² + U_{z_iz_i}(x0 cos μt, 0, 0)。
    canonical 为换元 τ = μt 之后的 Mathieu 参数点 (q_i, α_i)，
    势能的二阶偏导不是 k·y² 形式时为 None。
    """

    system: ModeSystem
    potential: Potential
    coefficients: Tuple[Callable, Callable]
    canonical: Optional[Tuple[MathieuPoint, MathieuPoint]]
    constant: bool = False


@dataclass(frozen=True, eq=False)
class LinearResponse:
    """
    线性化方程的基本解组

    xi[:, 0] 对应初值 (1, 0)，xi[:, 1] 对应初值 (0, 1)；dxi 为对应的导数。
    """

    mode_index: int
    t: np.ndarray
    xi: np.ndarray
    dxi: np.ndarray = field(repr=False)

    def sup(self, column: int = 0) -> float:
        return float(np.max(np.abs(self.xi[:, column])))
