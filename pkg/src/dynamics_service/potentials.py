from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Tuple

import numpy as np

from .exceptions import PotentialError


class Potential(ABC):
    """
    耦合势能 U(y, z_1, z_2)

    所有方法都接受标量或 numpy 数组。
    """

    name: ClassVar[str] = "potential"

    @abstractmethod
    def value(self, y, z1, z2):
        """U(y, z_1, z_2)"""

    @abstractmethod
    def gradient(self, y, z1, z2) -> Tuple:
        """(U_y, U_{z_1}, U_{z_2})"""

    @abstractmethod
    def residual_stiffness(self, y) -> Tuple:
        """(U_{z_1z_1}(y,0,0), U_{z_2z_2}(y,0,0))"""

    @property
    def mathieu_couplings(self) -> Optional[Tuple[float, float]]:
        """U_{z_iz_i}(y,0,0) = k_i·y² 时返回 (k_1, k_2)，线性化为 Mathieu 方程"""
        return None


@dataclass(frozen=True)
class WeightedQuadratic(Potential):
    """U = (γ y² z_1² + β y² z_2² + z_1² z_2²) / 2"""

    gamma: float = 1.0
    beta: float = 1.0

    name: ClassVar[str] = "weighted"

    def __post_init__(self):
        if not (self.gamma > 0 and self.beta > 0):
            raise PotentialError(f"gamma and beta must be positive, got {self.gamma}, {self.beta}")

    def value(self, y, z1, z2):
        return 0.5 * (self.gamma * y**2 * z1**2 + self.beta * y**2 * z2**2 + z1**2 * z2**2)

    def gradient(self, y, z1, z2):
        return (
            y * (self.gamma * z1**2 + self.beta * z2**2),
            z1 * (self.gamma * y**2 + z2**2),
            z2 * (self.beta * y**2 + z1**2),
        )

    def residual_stiffness(self, y):
        return self.gamma * y**2, self.beta * y**2

    @property
    def mathieu_couplings(self):
        return self.gamma, self.beta


@dataclass(frozen=True)
class QuadraticCoupling(WeightedQuadratic):
    """U = (y² z_1² + y² z_2² + z_1² z_2²) / 2，即 γ = β = 1"""

    gamma: float = field(default=1.0, init=False)
    beta: float = field(default=1.0, init=False)

    name: ClassVar[str] = "quadratic"


@dataclass(frozen=True)
class QuarticDegenerate(Potential):
    """
    U = (y⁴ z_1⁴ + y⁴ z_2⁴ + z_1⁴ z_2⁴) / 4

    U_{z_iz_i}(y,0,0) ≡ 0，线性化与主模态振幅无关。
    """

    name: ClassVar[str] = "quartic"

    def value(self, y, z1, z2):
        return 0.25 * (y**4 * z1**4 + y**4 * z2**4 + z1**4 * z2**4)

    def gradient(self, y, z1, z2):
        return (
            y**3 * (z1**4 + z2**4),
            z1**3 * (y**4 + z2**4),
            z2**3 * (y**4 + z1**4),
        )

    def residual_stiffness(self, y):
        zero = np.zeros_like(np.asarray(y, dtype=float))
        return zero, zero.copy()


def potential_from_name(name: str, gamma: float = 1.0, beta: float = 1.0) -> Potential:
    """按配置名称构造势能"""
    if name == QuadraticCoupling.name:
        return QuadraticCoupling()
    if name == WeightedQuadratic.name:
        return WeightedQuadratic(gamma=gamma, beta=beta)
    if name == QuarticDegenerate.name:
        return QuarticDegenerate()
    raise PotentialError(f"Unknown potential variant: {name!r}")
