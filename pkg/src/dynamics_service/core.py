import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from config.app_config import DEFAULT_T_END, MAX_SAMPLE_STEP, SAMPLES_PER_PERIOD
from mathieu_service import MathieuPoint
from resonance_service import ModeSystem, diagram_points
from .exceptions import DynamicsError, IntegrationError, PotentialError
from .potentials import Potential
from .schemas import (
    IntegrationSettings,
    LinearResponse,
    LinearizedSystem,
    State,
    Trajectory,
    TrajectoryMeta,
)

logger = logging.getLogger(__name__)

GRADIENT_ATOL = 1e-12


def _energy(states, potential: Potential, system: ModeSystem):
    """对单个状态向量或 (n, 6) 数组求总能量"""
    y, z1, z2, vy, vz1, vz2 = np.moveaxis(np.asarray(states, dtype=float), -1, 0)
    kinetic = 0.5 * (vy**2 + vz1**2 + vz2**2)
    harmonic = 0.5 * (system.mu**2 * y**2 + system.lambda1**2 * z1**2 + system.lambda2**2 * z2**2)
    return kinetic + harmonic + potential.value(y, z1, z2)


def total_energy(state: State, potential: Potential, system: ModeSystem) -> float:
    """E = (ẏ² + ż_1² + ż_2²)/2 + (μ²y² + λ_1²z_1² + λ_2²z_2²)/2 + U(y, z_1, z_2)"""
    return float(_energy(state.as_vector(), potential, system))


def sampling_step(system: ModeSystem, potential: Potential, settings: IntegrationSettings) -> float:
    """
    输出网格步长: min(0.01, 2π / (20·最快频率))

    残余模态的频率按主模态振幅处的刚度 λ_i² + U_{z_iz_i}(x0, 0, 0) 估计。
    """
    if settings.sample_step is not None:
        return settings.sample_step
    stiffness = potential.residual_stiffness(abs(system.x0))
    fastest = max(
        system.mu,
        math.sqrt(system.lambda1**2 + float(stiffness[0])),
        math.sqrt(system.lambda2**2 + float(stiffness[1])),
    )
    return min(MAX_SAMPLE_STEP, 2.0 * math.pi / (SAMPLES_PER_PERIOD * fastest))


def _uniform_grid(t0: float, t_end: float, step: float) -> np.ndarray:
    count = max(1, math.ceil(t_end / step - 1e-9))
    return np.linspace(t0, t0 + t_end, count + 1)


def _equations_of_motion(system: ModeSystem, potential: Potential) -> Callable:
    stiffness = np.array([system.mu**2, system.lambda1**2, system.lambda2**2])

    def rhs(t, u):
        position, velocity = u[:3], u[3:]
        gradient = np.array(potential.gradient(*position), dtype=float)
        return np.concatenate((velocity, -stiffness * position - gradient))

    return rhs


def _relative_drift(energy: np.ndarray) -> float:
    deviation = float(np.max(np.abs(energy - energy[0])))
    return deviation / energy[0] if energy[0] > 0 else deviation


def _solve_adaptive(rhs: Callable, start: np.ndarray, grid: np.ndarray, settings: IntegrationSettings) -> np.ndarray:
    try:
        solution = solve_ivp(
            rhs,
            (grid[0], grid[-1]),
            start,
            method=settings.method,
            rtol=settings.rtol,
            atol=settings.atol,
            dense_output=True,
        )
    except (ValueError, ArithmeticError) as e:
        logger.error(f"积分器 {settings.method} 异常: {e}")
        raise IntegrationError(f"Integrator {settings.method} failed: {e}") from e

    if solution.status != 0:
        logger.error(f"积分在 t={solution.t[-1]:.6g} 处中止: {solution.message}")
        raise IntegrationError(
            f"Integration aborted at t={solution.t[-1]:.6g} of {grid[-1]:.6g} "
            f"({solution.nfev} evaluations): {solution.message}"
        )

    samples = solution.sol(grid).T
    samples[0] = start
    return samples


def _solve_verlet(
    system: ModeSystem, potential: Potential, start: np.ndarray, grid: np.ndarray, settings: IntegrationSettings
) -> np.ndarray:
    """固定步长速度 Verlet，步长向下取整到输出网格的整数分之一"""
    stiffness = np.array([system.mu**2, system.lambda1**2, system.lambda2**2])

    def acceleration(position):
        return -stiffness * position - np.array(potential.gradient(*position), dtype=float)

    spacing = (grid[-1] - grid[0]) / (len(grid) - 1)
    substeps = max(1, math.ceil(spacing / settings.verlet_step - 1e-9))
    h = spacing / substeps

    samples = np.empty((len(grid), 6))
    samples[0] = start
    position, velocity = start[:3].copy(), start[3:].copy()
    accel = acceleration(position)
    for k in range(1, len(grid)):
        for _ in range(substeps):
            velocity += 0.5 * h * accel
            position += h * velocity
            accel = acceleration(position)
            velocity += 0.5 * h * accel
        samples[k, :3] = position
        samples[k, 3:] = velocity
    return samples


def integrate(
    system: ModeSystem,
    potential: Potential,
    t_end: float = DEFAULT_T_END,
    settings: Optional[IntegrationSettings] = None,
    initial_state: Optional[State] = None,
) -> Trajectory:
    """
    积分完整的六维非线性系统

    默认初值为 y = x0, z_i = εx0，静止出发；给出 initial_state 时从该状态 (及其时间) 出发。
    能量漂移超过 settings.drift_bound 时轨迹保留但标记为 degraded。
    """
    if not t_end > 0:
        raise DynamicsError(f"t_end must be positive, got {t_end}")
    settings = settings or IntegrationSettings()
    start_state = initial_state or State.initial(system)
    start = start_state.as_vector()
    grid = _uniform_grid(start_state.t, t_end, sampling_step(system, potential, settings))

    if settings.backend == "verlet":
        samples = _solve_verlet(system, potential, start, grid, settings)
    else:
        samples = _solve_adaptive(_equations_of_motion(system, potential), start, grid, settings)

    if not np.all(np.isfinite(samples)):
        logger.error(f"x0={system.x0} 的轨迹出现非有限值")
        raise IntegrationError(f"Trajectory for x0={system.x0} contains non-finite values")

    energy = _energy(samples, potential, system)
    drift = _relative_drift(energy)
    degraded = drift > settings.drift_bound
    if degraded:
        logger.warning(
            f"x0={system.x0} 能量漂移 {drift:.3g} 超过上限 {settings.drift_bound:.3g}，轨迹标记为 degraded"
        )
    logger.debug(f"x0={system.x0} 积分完成: {len(grid)} 个采样点, 能量漂移 {drift:.3g}")

    return Trajectory(
        t=grid,
        states=samples,
        energy=energy,
        meta=TrajectoryMeta(system=system, potential=potential, settings=settings),
        energy_drift=drift,
        degraded=degraded,
    )


def _check_gradient_condition(system: ModeSystem, potential: Potential):
    scale = max(1.0, 2.0 * abs(system.x0))
    ys = np.linspace(-scale, scale, 41)
    zeros = np.zeros_like(ys)
    gradient = np.array(potential.gradient(ys, zeros, zeros), dtype=float)
    worst = float(np.max(np.abs(gradient)))
    if worst > GRADIENT_ATOL:
        logger.error(f"势能 {potential.name} 在 z = 0 轴上梯度不为零: {worst:.3g}")
        raise PotentialError(
            f"Potential {potential.name} violates grad U(y,0,0) = 0 (max |grad| = {worst:.3g} on |y| <= {scale})"
        )


def linearize(system: ModeSystem, potential: Potential) -> LinearizedSystem:
    """
    残余模态沿 (x0 cos μt, 0, 0) 的线性化:
    ξ_i'' + (λ_i² + U_{z_iz_i}(x0 cos μt, 0, 0)) ξ_i = 0
    """
    _check_gradient_condition(system, potential)
    mu, x0 = system.mu, system.x0

    def coefficient(mode_index: int) -> Callable:
        lam2 = system.frequency(mode_index) ** 2

        def c(t):
            return lam2 + potential.residual_stiffness(x0 * np.cos(mu * t))[mode_index - 1]

        return c

    samples = np.linspace(-max(1.0, abs(x0)), max(1.0, abs(x0)), 21)
    constant = all(np.all(np.asarray(k) == 0.0) for k in potential.residual_stiffness(samples))

    couplings = potential.mathieu_couplings
    if couplings is not None:
        canonical = diagram_points(system, couplings=couplings)
    elif constant:
        canonical = tuple(MathieuPoint(q=0.0, a=system.frequency(i) ** 2 / mu**2) for i in (1, 2))
    else:
        canonical = None

    return LinearizedSystem(
        system=system,
        potential=potential,
        coefficients=(coefficient(1), coefficient(2)),
        canonical=canonical,
        constant=constant,
    )


def integrate_linearized(
    system: ModeSystem,
    potential: Potential,
    t_end: float = DEFAULT_T_END,
    settings: Optional[IntegrationSettings] = None,
) -> Tuple[LinearResponse, LinearResponse]:
    """对两个线性化方程各积分一组基本解 (初值 (1, 0) 与 (0, 1))，采样网格与 integrate 相同"""
    if not t_end > 0:
        raise DynamicsError(f"t_end must be positive, got {t_end}")
    settings = settings or IntegrationSettings()
    linearized = linearize(system, potential)
    grid = _uniform_grid(0.0, t_end, sampling_step(system, potential, settings))
    start = np.array([1.0, 0.0, 0.0, 1.0])

    responses = []
    for mode_index, c in zip((1, 2), linearized.coefficients):

        def rhs(t, u, c=c):
            stiffness = c(t)
            return np.array([u[2], u[3], -stiffness * u[0], -stiffness * u[1]])

        samples = _solve_adaptive(rhs, start, grid, settings)
        responses.append(LinearResponse(mode_index=mode_index, t=grid, xi=samples[:, :2], dxi=samples[:, 2:]))
    return responses[0], responses[1]
