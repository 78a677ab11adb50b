from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class Rmce(str, Enum):
    """哪个残余模态捕获了主模态的能量"""

    NONE = "none"
    Z1 = "z1"
    Z2 = "z2"
    BOTH = "both"

    @classmethod
    def of(cls, mode1: bool, mode2: bool) -> "Rmce":
        if mode1 and mode2:
            return cls.BOTH
        if mode1:
            return cls.Z1
        if mode2:
            return cls.Z2
        return cls.NONE

    @property
    def modes(self) -> Tuple[bool, bool]:
        return self in (Rmce.Z1, Rmce.BOTH), self in (Rmce.Z2, Rmce.BOTH)


class Agreement(str, Enum):
    AGREE = "agree"
    DISAGREE = "disagree"
    EXCLUDED = "excluded"  # 靠近区间端点或位于窄区间内
    DEGRADED = "degraded"  # 积分失败或能量漂移超限


@dataclass(frozen=True)
class ModeGrowth:
    """单个残余模态的增长: G = max|z_i| / |z_i(0)|"""

    mode_index: int
    initial_amplitude: float
    peak: float
    growth_factor: float
    first_crossing: Optional[float] = None  # 首次 |z_i| >= threshold·|z_i(0)| 的时间
    secondary: bool = False  # 越过阈值远晚于另一模态，不计入结论


@dataclass(frozen=True)
class RmceVerdict:
    modes: Tuple[ModeGrowth, ModeGrowth]
    classification: Rmce
    threshold: float

    def growth(self, mode_index: int) -> ModeGrowth:
        return self.modes[mode_index - 1]


@dataclass(frozen=True)
class SweepRow:
    """扫描表中的一行: 预测 (激活区间) 与观测 (非线性积分) 的对照"""

    x0: float
    q: float
    energy: float
    predicted: Tuple[bool, bool]
    verdict: Optional[RmceVerdict]
    agreement: Agreement
    energy_drift: Optional[float] = None
    error: Optional[str] = None

    @property
    def predicted_rmce(self) -> Rmce:
        return Rmce.of(*self.predicted)


@dataclass(frozen=True)
class RmceBand:
    """x0 轴上预测结论相同的一段 (lo, hi)，names 为覆盖该段的激活区间名"""

    lo: float
    hi: float
    rmce: Rmce
    names: Tuple[str, ...] = ()
