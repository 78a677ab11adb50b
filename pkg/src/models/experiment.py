from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.app_config import (
    DEFAULT_OUTPUT_DIR,
    DEFAULT_T_END,
    DEFAULT_THRESHOLD,
    DIAGRAM_RESOLUTION,
    DRIFT_BOUND,
    INTEGRATION_ATOL,
    INTEGRATION_RTOL,
    SECONDARY_LAG,
)
from dynamics_service import IntegrationSettings, Potential, potential_from_name
from resonance_service import ModeSystem


class ExperimentConfig(BaseModel):
    """一次实验的完整配置; 未知键直接拒绝"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "custom"
    mu: float = Field(gt=0)
    lambda1: float = Field(gt=0)
    lambda2: float = Field(gt=0)
    epsilon: float = Field(ge=0)

    potential: Literal["quadratic", "weighted", "quartic"] = "quadratic"
    gamma: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, gt=0)

    # 单点 (simulate) 与网格 (sweep)
    x0: Optional[float] = None
    x0_min: float = Field(default=0.1, gt=0)
    x0_max: float = Field(default=3.0, gt=0)
    x0_step: float = Field(default=0.1, gt=0)
    x0_extra: List[float] = []  # 额外加入扫描网格的 x0 (如窄区间内的点)
    scan_x0_max: Optional[float] = Field(default=None, gt=0)

    t_end: float = Field(default=DEFAULT_T_END, gt=0)
    rtol: float = Field(default=INTEGRATION_RTOL, gt=0)
    atol: float = Field(default=INTEGRATION_ATOL, gt=0)
    drift_bound: float = Field(default=DRIFT_BOUND, gt=0)
    backend: Literal["adaptive", "verlet"] = "adaptive"
    threshold: float = Field(default=DEFAULT_THRESHOLD, gt=1)
    secondary_lag: float = Field(default=SECONDARY_LAG, gt=0)

    q_max: Optional[float] = None
    a_max: Optional[float] = None
    resolution: int = Field(default=DIAGRAM_RESOLUTION, ge=2)

    output_dir: str = DEFAULT_OUTPUT_DIR

    @field_validator("x0_extra", mode="before")
    @classmethod
    def split_x0_extra(cls, value: Any) -> Any:
        # INI 中写作逗号分隔的列表
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @model_validator(mode="after")
    def check_ranges(self) -> "ExperimentConfig":
        if self.x0_max < self.x0_min:
            raise ValueError(f"x0_max ({self.x0_max}) must not be below x0_min ({self.x0_min})")
        if any(x0 <= 0 for x0 in self.x0_extra):
            raise ValueError("x0_extra values must be positive")
        return self

    def system(self, x0: Optional[float] = None) -> ModeSystem:
        amplitude = x0 if x0 is not None else (self.x0 if self.x0 is not None else self.x0_max)
        return ModeSystem(
            mu=self.mu, lambda1=self.lambda1, lambda2=self.lambda2, epsilon=self.epsilon, x0=amplitude
        )

    def build_potential(self) -> Potential:
        return potential_from_name(self.potential, gamma=self.gamma, beta=self.beta)

    def integration_settings(self) -> IntegrationSettings:
        return IntegrationSettings(
            rtol=self.rtol, atol=self.atol, drift_bound=self.drift_bound, backend=self.backend
        )

    def x0_grid(self) -> List[float]:
        """x0_min, x0_min + step, ... 不超过 x0_max，数值按 12 位小数取整；x0_extra 按大小并入"""
        count = int(round((self.x0_max - self.x0_min) / self.x0_step + 1e-9)) + 1
        grid = [round(self.x0_min + k * self.x0_step, 12) for k in range(count)]
        grid = [x0 for x0 in grid if x0 <= self.x0_max + 1e-12]
        return sorted(set(grid) | {round(x0, 12) for x0 in self.x0_extra})

    @property
    def interval_limit(self) -> float:
        return self.scan_x0_max if self.scan_x0_max is not None else self.x0_max


class CommandResult(BaseModel):
    """子命令的执行结果: 写出的文件与简要结论"""

    command: str
    experiment: str
    files: List[str] = []
    summary: Dict[str, Any] = {}
