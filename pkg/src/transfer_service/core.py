import logging
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config.app_config import DEFAULT_T_END, DEFAULT_THRESHOLD, ENDPOINT_MARGIN, SECONDARY_LAG
from dynamics_service import IntegrationSettings, Potential, Trajectory, integrate, linearize
from mathieu_service import StabilityClass, classify_by_curves
from resonance_service import (
    ActivatingInterval,
    ModeSystem,
    activating_intervals,
    energy_of_amplitude,
    q_of_amplitude,
)
from utils.task_utils import run_tasks
from .schemas import Agreement, ModeGrowth, Rmce, RmceBand, RmceVerdict, SweepRow
from .exceptions import DetectionError, UndefinedGrowthError

logger = logging.getLogger(__name__)


def _mode_growth(t: np.ndarray, z: np.ndarray, mode_index: int, threshold: float) -> ModeGrowth:
    amplitude = np.abs(z)
    initial = float(amplitude[0])
    if initial == 0.0:
        raise UndefinedGrowthError(
            f"Residual mode {mode_index} starts at zero amplitude; growth factor is undefined"
        )
    above = np.nonzero(amplitude >= threshold * initial)[0]
    peak = float(np.max(amplitude))
    return ModeGrowth(
        mode_index=mode_index,
        initial_amplitude=initial,
        peak=peak,
        growth_factor=peak / initial,
        first_crossing=float(t[above[0]]) if above.size else None,
    )


def _mark_secondary(modes: Tuple[ModeGrowth, ModeGrowth], lag: Optional[float]) -> Tuple[ModeGrowth, ModeGrowth]:
    """两个模态都越过阈值且间隔超过 lag 时，较晚的一个标记为二次捕获"""
    if lag is None or any(m.first_crossing is None for m in modes):
        return modes
    early, late = sorted(modes, key=lambda m: m.first_crossing)
    if late.first_crossing - early.first_crossing <= lag:
        return modes
    logger.debug(
        f"z{late.mode_index} 在 t={late.first_crossing:.4g} 越过阈值，"
        f"晚于 z{early.mode_index} (t={early.first_crossing:.4g})，记为二次捕获"
    )
    marked = replace(late, secondary=True)
    return tuple(marked if m.mode_index == late.mode_index else m for m in modes)


def detect(
    trajectory: Trajectory,
    threshold: float = DEFAULT_THRESHOLD,
    secondary_lag: Optional[float] = SECONDARY_LAG,
) -> RmceVerdict:
    """
    判断哪个残余模态捕获了能量

    G_i = max_t |z_i(t)| / |z_i(0)|，G_i >= threshold 即视为模态 i 被激活 (默认增大一个数量级)。
    一个模态先被激活后，另一个模态可以从它那里间接获得能量；若后者首次越过阈值
    比前者晚 secondary_lag 以上，只计为二次捕获，不进入结论 (G_i 照常报告)。
    secondary_lag 为 None 时两个模态一律计入。
    """
    if not threshold > 1:
        raise DetectionError(f"threshold must be greater than 1, got {threshold}")
    if secondary_lag is not None and not secondary_lag > 0:
        raise DetectionError(f"secondary_lag must be positive, got {secondary_lag}")
    modes = tuple(_mode_growth(trajectory.t, trajectory.residual(i), i, threshold) for i in (1, 2))
    modes = _mark_secondary(modes, secondary_lag)
    classification = Rmce.of(*(m.growth_factor >= threshold and not m.secondary for m in modes))
    return RmceVerdict(modes=modes, classification=classification, threshold=threshold)


# ---------------------------------------------------------------------------
# 预测与观测的对照
# ---------------------------------------------------------------------------


def predicted_modes(intervals: Sequence[ActivatingInterval], x0: float) -> Tuple[bool, bool]:
    """x0 落在哪些残余模态的激活区间内"""
    return tuple(
        any(interval.mode_index == i and interval.contains_x0(x0) for interval in intervals) for i in (1, 2)
    )


def is_excluded(intervals: Sequence[ActivatingInterval], x0: float, margin: float = ENDPOINT_MARGIN) -> bool:
    """距区间端点不足 margin，或位于窄区间内"""
    for interval in intervals:
        if interval.narrow and interval.contains_x0(x0):
            return True
        if any(abs(abs(x0) - end) < margin for end in interval.x0_range):
            return True
    return False


def agreement_of(predicted: Tuple[bool, bool], observed: Rmce) -> Agreement:
    """
    预测与观测一致: 两者同为空，或预测的模态全部被观测到
    (预测 z_i 而观测到 both 视为一致，第二个模态可以从 z_i 间接获得能量)
    """
    observed_modes = observed.modes
    if not any(predicted):
        return Agreement.AGREE if not any(observed_modes) else Agreement.DISAGREE
    covered = all(o for p, o in zip(predicted, observed_modes) if p)
    return Agreement.AGREE if covered else Agreement.DISAGREE


def name_intervals(intervals: Sequence[ActivatingInterval]) -> List[Tuple[str, ActivatingInterval]]:
    """按模态和位置命名: 模态 i 的第 j 个激活区间为 I_i^j"""
    named = []
    for mode_index in (1, 2):
        own = sorted((iv for iv in intervals if iv.mode_index == mode_index), key=lambda iv: iv.x0_range[0])
        named.extend((f"I_{mode_index}^{j}", interval) for j, interval in enumerate(own, start=1))
    return named


def predicted_bands(intervals: Sequence[ActivatingInterval], x0_limit: float) -> List[RmceBand]:
    """
    由两个模态的激活区间做集合运算得到 [0, x0_limit] 上的预测带:
    只在模态 i 的区间内为 z_i，同时在两者内为 both，其余为 none
    """
    named = name_intervals(intervals)
    top = max([x0_limit] + [iv.x0_range[1] for _, iv in named])
    breakpoints = sorted({0.0, top} | {end for _, iv in named for end in iv.x0_range})

    bands: List[RmceBand] = []
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        mid = 0.5 * (lo + hi)
        inside = tuple(name for name, iv in named if iv.contains_x0(mid))
        active = predicted_modes([iv for _, iv in named if iv.contains_x0(mid)], mid)
        band = RmceBand(lo=lo, hi=hi, rmce=Rmce.of(*active), names=inside)
        if bands and bands[-1].rmce == band.rmce and bands[-1].names == band.names:
            bands[-1] = RmceBand(lo=bands[-1].lo, hi=hi, rmce=band.rmce, names=band.names)
        else:
            bands.append(band)
    return bands


def prediction_intervals(system: ModeSystem, potential: Potential, x0_max: float) -> List[ActivatingInterval]:
    couplings = potential.mathieu_couplings
    if couplings is None:
        return []
    return [
        interval
        for mode_index, coupling in zip((1, 2), couplings)
        for interval in activating_intervals(system, mode_index, x0_max, coupling)
    ]


def _fixed_prediction(system: ModeSystem, potential: Potential) -> Optional[Tuple[bool, bool]]:
    """线性化与振幅无关时，预测由固定的 Mathieu 点决定"""
    if potential.mathieu_couplings is not None:
        return None
    linearized = linearize(system, potential)
    if linearized.canonical is None:
        logger.warning(f"势能 {potential.name} 无 Mathieu 形式的线性化，不给出预测")
        return False, False
    return tuple(classify_by_curves(point)[0] == StabilityClass.UNSTABLE for point in linearized.canonical)


def _observe(job) -> Tuple[RmceVerdict, float, bool]:
    """进程池中执行的单点任务: 积分 + 检测，只回传轻量结果"""
    system, potential, t_end, settings, threshold, secondary_lag = job
    trajectory = integrate(system, potential, t_end, settings)
    return detect(trajectory, threshold, secondary_lag), trajectory.energy_drift, trajectory.degraded


def sweep(
    system_template: ModeSystem,
    potential: Potential,
    x0_grid: Sequence[float],
    threshold: float = DEFAULT_THRESHOLD,
    settings: Optional[IntegrationSettings] = None,
    t_end: float = DEFAULT_T_END,
    intervals: Optional[Sequence[ActivatingInterval]] = None,
    parallel: bool = True,
    secondary_lag: Optional[float] = SECONDARY_LAG,
) -> List[SweepRow]:
    """
    在 x0 网格上逐点积分并检测，与激活区间给出的预测对照

    单点失败记为 degraded 行，扫描继续；行顺序与网格顺序一致。
    """
    grid = [float(x0) for x0 in x0_grid]
    if not grid:
        raise DetectionError("x0 grid must not be empty")
    if not threshold > 1:
        raise DetectionError(f"threshold must be greater than 1, got {threshold}")
    settings = settings or IntegrationSettings()

    if intervals is None:
        x0_max = max(abs(x0) for x0 in grid) + 2.0 * ENDPOINT_MARGIN
        intervals = prediction_intervals(system_template, potential, x0_max)
    fixed = _fixed_prediction(system_template, potential)
    k1 = (potential.mathieu_couplings or (1.0, 1.0))[0]

    jobs = [
        (system_template.with_amplitude(x0), potential, t_end, settings, threshold, secondary_lag) for x0 in grid
    ]
    outcomes = run_tasks(_observe, jobs, parallel=parallel)

    rows = []
    for x0, outcome in zip(grid, outcomes):
        predicted = fixed if fixed is not None else predicted_modes(intervals, x0)
        common = dict(
            x0=x0,
            q=q_of_amplitude(system_template.mu, x0, k1),
            energy=energy_of_amplitude(system_template.mu, x0),
            predicted=predicted,
        )
        if not outcome.success:
            rows.append(SweepRow(verdict=None, agreement=Agreement.DEGRADED, error=outcome.error, **common))
            continue
        verdict, drift, degraded = outcome.value
        if degraded:
            agreement = Agreement.DEGRADED
        elif fixed is None and is_excluded(intervals, x0):
            agreement = Agreement.EXCLUDED
        else:
            agreement = agreement_of(predicted, verdict.classification)
        rows.append(SweepRow(verdict=verdict, agreement=agreement, energy_drift=drift, **common))

    tally = {a.value: sum(row.agreement == a for row in rows) for a in Agreement}
    logger.info(f"扫描完成: {len(rows)} 个 x0, {tally}")
    return rows
