import math

import pytest

from config import shared_state
from dynamics_service import QuadraticCoupling
from resonance_service import ModeSystem


@pytest.fixture(autouse=True)
def sequential_tasks(monkeypatch):
    """测试中不启动进程池"""
    monkeypatch.setattr(shared_state, "MAX_WORKERS", 1)


@pytest.fixture
def experiment1() -> ModeSystem:
    return ModeSystem(mu=1.0, lambda1=math.sqrt(0.1), lambda2=math.sqrt(0.9), epsilon=1e-3, x0=0.4)


@pytest.fixture
def experiment2() -> ModeSystem:
    return ModeSystem(mu=1.0, lambda1=2.0, lambda2=4.0, epsilon=1e-3, x0=1.0)


@pytest.fixture
def experiment3() -> ModeSystem:
    return ModeSystem(mu=math.sqrt(2.0) / 2.0, lambda1=2.0, lambda2=4.0, epsilon=1e-2, x0=1.0)


@pytest.fixture
def quadratic() -> QuadraticCoupling:
    return QuadraticCoupling()
