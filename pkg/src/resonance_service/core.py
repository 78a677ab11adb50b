import logging
import math
import string
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from config.app_config import (
    CURVE_MARGIN,
    EXTENSION_FACTOR,
    NARROW_WIDTH,
    Q_SCAN_STEP,
    Q_STEP_FLOOR,
    Q_TOL,
)
from mathieu_service import (
    CharacteristicCurveId,
    CurveFamily,
    MathieuPoint,
    StabilityClass,
    characteristic_spectrum,
    characteristic_value,
    classify_by_curves,
)
from .schemas import ActivatingInterval, Crossing, ModeSystem, ParametricLine
from .exceptions import IntervalScanError, InvalidSystemError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 能量 / 振幅 / q 换算: E = μ²x0²/2 = 2μ⁴q/k, q = k·x0²/(4μ²)
# ---------------------------------------------------------------------------


def _check_mu(mu: float):
    if not mu > 0:
        raise InvalidSystemError(f"mu must be positive, got {mu}")


def energy_of_amplitude(mu: float, x0: float) -> float:
    _check_mu(mu)
    return 0.5 * mu**2 * x0**2


def amplitude_of_energy(mu: float, energy: float) -> float:
    _check_mu(mu)
    if energy < 0:
        raise InvalidSystemError(f"Energy must be non-negative, got {energy}")
    return math.sqrt(2.0 * energy) / mu


def q_of_amplitude(mu: float, x0: float, coupling: float = 1.0) -> float:
    _check_mu(mu)
    return coupling * x0**2 / (4.0 * mu**2)


def amplitude_of_q(mu: float, q: float, coupling: float = 1.0) -> float:
    _check_mu(mu)
    return 2.0 * mu * math.sqrt(q / coupling)


def energy_of_q(mu: float, q: float, coupling: float = 1.0) -> float:
    _check_mu(mu)
    return 2.0 * mu**4 * q / coupling


def line_of(system: ModeSystem, mode_index: int, coupling: float = 1.0) -> ParametricLine:
    """残余模态 mode_index 的参数直线 a = λ_i²/μ² + 2q"""
    lam = system.frequency(mode_index)
    return ParametricLine(
        mode_index=mode_index,
        intercept=lam**2 / system.mu**2,
        mu=system.mu,
        coupling=coupling,
    )


def diagram_points(
    system: ModeSystem,
    x0: Optional[float] = None,
    couplings: Tuple[float, float] = (1.0, 1.0),
) -> Tuple[MathieuPoint, MathieuPoint]:
    """振幅 x0 对应的两个 Mathieu 参数点 (q_i(x0), α_i(x0))"""
    amplitude = system.x0 if x0 is None else x0
    points = []
    for mode_index, coupling in zip((1, 2), couplings):
        line = line_of(system, mode_index, coupling)
        q = q_of_amplitude(system.mu, amplitude, coupling)
        points.append(MathieuPoint(q=q, a=line.at(q)))
    return points[0], points[1]


# ---------------------------------------------------------------------------
# 直线与特征曲线求交
# ---------------------------------------------------------------------------


def _gap(line: ParametricLine, curve: CharacteristicCurveId, q: float) -> float:
    return line.at(q) - characteristic_value(curve, q)


def _order_gaps(line: ParametricLine, q: float, max_order: int) -> Tuple[np.ndarray, np.ndarray]:
    a_values, b_values = characteristic_spectrum(q, max_order)
    value = line.at(q)
    return value - b_values[1:], value - a_values[1:]


def _separate(line: ParametricLine, order: int, lo: float, hi: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """
    同一格内 b_n 与 a_n 都被穿过 (窄尖角) 时对半细分，
    直到两条曲线的交点落在不同子格或步长到达下限。
    """
    b_lo, b_hi, a_lo, a_hi = lo, hi, lo, hi
    curve_b = CharacteristicCurveId(CurveFamily.B, order)
    curve_a = CharacteristicCurveId(CurveFamily.A, order)
    while b_hi - b_lo > Q_STEP_FLOOR and a_hi - a_lo > Q_STEP_FLOOR and b_lo == a_lo and b_hi == a_hi:
        mid = 0.5 * (b_lo + b_hi)
        below_b = (_gap(line, curve_b, b_lo) > 0) != (_gap(line, curve_b, mid) > 0)
        below_a = (_gap(line, curve_a, a_lo) > 0) != (_gap(line, curve_a, mid) > 0)
        b_lo, b_hi = (b_lo, mid) if below_b else (mid, b_hi)
        a_lo, a_hi = (a_lo, mid) if below_a else (mid, a_hi)
    return (b_lo, b_hi), (a_lo, a_hi)


def _root(line: ParametricLine, curve: CharacteristicCurveId, lo: float, hi: float, q_tol: float) -> float:
    try:
        return brentq(lambda q: _gap(line, curve, q), lo, hi, xtol=q_tol)
    except ValueError as e:
        logger.error(f"{curve.label} 端点求根失败 [{lo}, {hi}]: {e}")
        raise IntervalScanError(
            f"Root of line {line.mode_index} vs {curve.label} not bracketed in [{lo}, {hi}]"
        ) from e


def _scan(
    line: ParametricLine, q_start: float, q_end: float, q_step: float, q_tol: float
) -> List[Tuple[int, float, float, bool]]:
    """
    在 [q_start, q_end] 上粗扫 + 逐曲线求根

    Returns:
        [(region_order, q_lo, q_hi, open_end)]，open_end 表示区间延伸到 q_end 之外
    """
    max_order = max(1, math.floor(math.sqrt(line.intercept + 2.0 * q_end + CURVE_MARGIN)))
    cells = max(1, math.ceil((q_end - q_start) / q_step))
    grid = np.linspace(q_start, q_end, cells + 1)
    if grid[0] == 0.0:
        # q = 0 处直线可能恰好落在曲线上 (λ/μ 为整数)
        grid[0] = min(q_step, q_end) * 1e-6

    gaps_b = np.empty((grid.size, max_order))
    gaps_a = np.empty((grid.size, max_order))
    for k, q in enumerate(grid):
        gaps_b[k], gaps_a[k] = _order_gaps(line, q, max_order)

    flips_b = (gaps_b[:-1] > 0) != (gaps_b[1:] > 0)
    flips_a = (gaps_a[:-1] > 0) != (gaps_a[1:] > 0)

    roots = []
    for j in range(max_order):
        order = j + 1
        curve_b = CharacteristicCurveId(CurveFamily.B, order)
        curve_a = CharacteristicCurveId(CurveFamily.A, order)
        cells_b = set(np.nonzero(flips_b[:, j])[0].tolist())
        cells_a = set(np.nonzero(flips_a[:, j])[0].tolist())
        for k in sorted(cells_b | cells_a):
            lo, hi = float(grid[k]), float(grid[k + 1])
            bracket_b, bracket_a = (lo, hi), (lo, hi)
            if k in cells_b and k in cells_a:
                bracket_b, bracket_a = _separate(line, order, lo, hi)
            if k in cells_b:
                roots.append(_root(line, curve_b, *bracket_b, q_tol))
            if k in cells_a:
                roots.append(_root(line, curve_a, *bracket_a, q_tol))

    breakpoints = [float(grid[0])] + sorted(roots) + [float(q_end)]
    spans: List[Tuple[int, float, float, bool]] = []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        stability, order = classify_by_curves(MathieuPoint(q=mid, a=line.at(mid)))
        if stability != StabilityClass.UNSTABLE or order < 1:
            continue
        if spans and spans[-1][0] == order and spans[-1][2] == lo:
            spans[-1] = (order, spans[-1][1], hi, hi >= q_end)
        else:
            spans.append((order, lo, hi, hi >= q_end))
    return spans


def _extend(line: ParametricLine, order: int, q_from: float, q_step: float, q_tol: float) -> float:
    """区间在扫描上限处仍未结束时向外继续扫描，返回真实右端点"""
    limit = EXTENSION_FACTOR * q_from + 10.0
    chunk = max(1.0, 0.25 * q_from)
    start = q_from
    while start < limit:
        end = min(start + chunk, limit)
        spans = _scan(line, start, end, q_step, q_tol)
        if not spans or spans[0][0] != order or spans[0][1] > start:
            break
        if not spans[0][3]:
            return spans[0][2]
        start = end
    logger.error(f"模态 {line.mode_index} 的 U_{order} 区间在 q={q_from} 之后找不到右端点")
    raise IntervalScanError(
        f"Exit of U_{order} for line {line.mode_index} not found beyond q={q_from} "
        f"(scan resolution {q_step}, limit {limit})"
    )


def _make_interval(line: ParametricLine, order: int, q_lo: float, q_hi: float, truncated: bool) -> ActivatingInterval:
    mu, k = line.mu, line.coupling
    x0_range = (amplitude_of_q(mu, q_lo, k), amplitude_of_q(mu, q_hi, k))
    return ActivatingInterval(
        mode_index=line.mode_index,
        region_order=order,
        q_range=(q_lo, q_hi),
        x0_range=x0_range,
        energy_range=(energy_of_q(mu, q_lo, k), energy_of_q(mu, q_hi, k)),
        truncated=truncated,
        narrow=(x0_range[1] - x0_range[0]) < NARROW_WIDTH,
    )


def activating_intervals(
    system: ModeSystem,
    mode_index: int,
    x0_max: float,
    coupling: float = 1.0,
    q_step: float = Q_SCAN_STEP,
    q_tol: float = Q_TOL,
) -> List[ActivatingInterval]:
    """
    残余模态 mode_index 在 (0, q(x0_max)] 内的全部激活区间

    每个区间在 b_n 处进入 U_n，在 a_n 处离开；跨过上限的区间报告完整范围并标记 truncated。
    """
    if not x0_max > 0:
        raise InvalidSystemError(f"x0_max must be positive, got {x0_max}")
    line = line_of(system, mode_index, coupling)
    q_max = q_of_amplitude(system.mu, x0_max, coupling)

    intervals = []
    for order, q_lo, q_hi, open_end in _scan(line, 0.0, q_max, q_step, q_tol):
        if open_end:
            q_hi = _extend(line, order, q_max, q_step, q_tol)
        intervals.append(_make_interval(line, order, q_lo, q_hi, open_end))

    logger.info(
        f"模态 {mode_index} (a = {line.intercept:.6g} + 2q) 扫描完成: "
        f"{len(intervals)} 个激活区间, q <= {q_max:.6g}"
    )
    return intervals


def first_activation(system: ModeSystem, mode_index: int, coupling: float = 1.0) -> ActivatingInterval:
    """残余模态的第一个激活区间 (E_1^i, E_2^i)"""
    line = line_of(system, mode_index, coupling)
    n = math.floor(math.sqrt(line.intercept))
    window = max(1.0, ((n + 1) ** 2 - line.intercept) / 2.0 + 1.0)
    start = 0.0
    while start < 1e4:
        spans = _scan(line, start, start + window, Q_SCAN_STEP, Q_TOL)
        if spans:
            order, q_lo, q_hi, open_end = spans[0]
            if open_end:
                q_hi = _extend(line, order, start + window, Q_SCAN_STEP, Q_TOL)
            return _make_interval(line, order, q_lo, q_hi, False)
        start += window
        window *= 2.0
    raise IntervalScanError(f"No activating interval found for mode {mode_index} below q=1e4")


def first_stability_threshold(
    system: ModeSystem, couplings: Tuple[float, float] = (1.0, 1.0)
) -> float:
    """
    临界能量 Ē: 两个残余模态第一个激活区间左端点能量的较小者

    E < Ē 时两条直线都位于稳定区。
    """
    firsts = [first_activation(system, i, k) for i, k in zip((1, 2), couplings)]
    winner = min(firsts, key=lambda interval: interval.energy_range[0])
    logger.info(
        f"临界能量 Ē={winner.energy_range[0]:.6g} 由模态 {winner.mode_index} "
        f"在 q={winner.q_range[0]:.6g} 离开稳定区"
    )
    return winner.energy_range[0]


def crossings(
    system: ModeSystem,
    x0_max: float,
    couplings: Tuple[float, float] = (1.0, 1.0),
    intervals: Optional[Sequence[ActivatingInterval]] = None,
) -> List[Crossing]:
    """x0_max 以内直线与特征曲线的全部交点，按 q 排序并依次标记 A, B, C ..."""
    if intervals is None:
        intervals = [
            interval
            for i, k in zip((1, 2), couplings)
            for interval in activating_intervals(system, i, x0_max, k)
        ]
    found = []
    for interval in intervals:
        k = couplings[interval.mode_index - 1]
        line = line_of(system, interval.mode_index, k)
        q_max = q_of_amplitude(system.mu, x0_max, k)
        for family, q in zip((CurveFamily.B, CurveFamily.A), interval.q_range):
            if q <= q_max:
                found.append((q, interval.mode_index, CharacteristicCurveId(family, interval.region_order), line, k))
    found.sort(key=lambda item: item[0])

    labels = list(string.ascii_uppercase)
    return [
        Crossing(
            label=labels[i] if i < len(labels) else f"P{i}",
            mode_index=mode_index,
            curve=curve,
            q=q,
            a=line.at(q),
            x0=amplitude_of_q(system.mu, q, k),
            energy=energy_of_q(system.mu, q, k),
        )
        for i, (q, mode_index, curve, line, k) in enumerate(found)
    ]
