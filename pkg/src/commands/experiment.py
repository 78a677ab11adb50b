import logging
import math
import os
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mathieu_service import CharacteristicCurveId, CurveFamily, characteristic_spectrum, classify_column
from resonance_service import (
    ActivatingInterval,
    Crossing,
    amplitude_of_q,
    crossings,
    first_stability_threshold,
    line_of,
    q_of_amplitude,
)
from dynamics_service import integrate, write_trajectory_csv
from transfer_service import (
    SweepRow,
    UndefinedGrowthError,
    detect,
    format_rmce_table,
    name_intervals,
    predicted_bands,
    prediction_intervals,
    sweep,
    write_sweep_csv,
)
from models.experiment import CommandResult, ExperimentConfig
from utils.file_utils import ensure_output_dir, write_csv, write_text
from utils.plot_utils import plot_residual_modes, plot_stability_diagram
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

# 输出文件名
CURVES_FILE = "curves.csv"
GRID_FILE = "stability_grid.csv"
CROSSINGS_FILE = "crossings.csv"
DIAGRAM_FILE = "diagram.svg"
INTERVALS_FILE = "intervals.csv"
INTERVALS_TABLE_FILE = "intervals.txt"
TRAJECTORY_FILE = "trajectory.csv"
RESIDUAL_PLOT_FILE = "residual_modes.svg"
SWEEP_FILE = "sweep.csv"
RMCE_TABLE_FILE = "rmce_table.txt"
REPORT_FILE = "report.txt"


def _couplings(config: ExperimentConfig) -> Tuple[float, float]:
    """参数直线所需的耦合权重; 退化势能没有参数直线"""
    couplings = config.build_potential().mathieu_couplings
    if couplings is None:
        raise ConfigError(
            f"Potential {config.potential!r} has an amplitude-independent linearization; "
            "it has no parametric lines or activating intervals"
        )
    return couplings


def _output_dir(config: ExperimentConfig, out_dir: Optional[str]) -> str:
    return ensure_output_dir(out_dir or config.output_dir)


def _describe(config: ExperimentConfig) -> str:
    text = (
        f"mu={config.mu:.6g} lambda1={config.lambda1:.6g} lambda2={config.lambda2:.6g} "
        f"epsilon={config.epsilon:.6g} potential={config.potential}"
    )
    if config.potential == "weighted":
        text += f" gamma={config.gamma:.6g} beta={config.beta:.6g}"
    return text


# ---------------------------------------------------------------------------
# diagram
# ---------------------------------------------------------------------------


def _diagram_crossings(config: ExperimentConfig, couplings: Tuple[float, float], q_max: float) -> List[Crossing]:
    """q_max 以内的交点; 耦合不同时按较小的耦合换算振幅上限，再按 q 过滤并重新标记"""
    system = config.system()
    x0_max = amplitude_of_q(config.mu, q_max, min(couplings))
    every = crossings(system, x0_max, couplings)
    found = [c for c in every if c.q <= q_max]
    if len(found) == len(every):
        return found
    return [replace(c, label=chr(ord("A") + i) if i < 26 else f"P{i}") for i, c in enumerate(found)]


def cmd_diagram(
    config: ExperimentConfig,
    q_max: Optional[float] = None,
    a_max: Optional[float] = None,
    resolution: Optional[int] = None,
    out_dir: Optional[str] = None,
) -> CommandResult:
    """
    稳定性图: 特征曲线采样、分类网格、交点表与 SVG

    输出 curves.csv (curve, q, a)、stability_grid.csv (q, a, unstable, order)、
    crossings.csv 与 diagram.svg。
    """
    couplings = _couplings(config)
    q_max = q_max if q_max is not None else config.q_max
    if q_max is None:
        q_max = q_of_amplitude(config.mu, config.interval_limit, max(couplings))
    lines = [line_of(config.system(), i, k) for i, k in zip((1, 2), couplings)]
    a_max = a_max if a_max is not None else config.a_max
    if a_max is None:
        a_max = max(line.at(q_max) for line in lines) + 1.0
    resolution = resolution if resolution is not None else config.resolution
    if not (q_max > 0 and a_max > 0):
        raise ConfigError(f"Diagram ranges must be positive, got q_max={q_max}, a_max={a_max}")
    if resolution < 2:
        raise ConfigError(f"Diagram resolution must be at least 2, got {resolution}")

    directory = _output_dir(config, out_dir)
    q_values = np.linspace(0.0, q_max, resolution)
    a_values = np.linspace(-2.0 * q_max - 1.0, a_max, resolution)
    max_order = math.floor(math.sqrt(a_max + 2.0 * q_max)) + 1

    spectra = [characteristic_spectrum(q, max_order) for q in q_values]
    curves: Dict[str, Tuple[np.ndarray, np.ndarray]] = {}
    curve_rows = []
    for family in (CurveFamily.A, CurveFamily.B):
        for order in range(0 if family == CurveFamily.A else 1, max_order + 1):
            label = CharacteristicCurveId(family, order).label
            values = np.array([(a if family == CurveFamily.A else b)[order] for a, b in spectra])
            curves[label] = (q_values, values)
            curve_rows.extend((label, q, v) for q, v in zip(q_values, values))

    unstable = np.empty((resolution, resolution), dtype=bool)
    grid_rows = []
    for j, q in enumerate(q_values):
        column, orders = classify_column(q, a_values)
        unstable[:, j] = column
        grid_rows.extend((q, a, flag, order) for a, flag, order in zip(a_values, column, orders))

    found = _diagram_crossings(config, couplings, q_max)
    files = [
        write_csv(os.path.join(directory, CURVES_FILE), ("curve", "q", "a"), curve_rows),
        write_csv(os.path.join(directory, GRID_FILE), ("q", "a", "unstable", "order"), grid_rows),
        write_csv(
            os.path.join(directory, CROSSINGS_FILE),
            ("label", "mode", "curve", "q", "a", "x0", "E"),
            ((c.label, c.mode_index, c.curve.label, c.q, c.a, c.x0, c.energy) for c in found),
        ),
        plot_stability_diagram(
            q_values,
            a_values,
            unstable,
            curves,
            os.path.join(directory, DIAGRAM_FILE),
            lines=[(f"l{line.mode_index}", line.intercept) for line in lines],
            points=[(c.label, c.q, c.a) for c in found],
            title=config.name,
        ),
    ]
    logger.info(f"稳定性图完成: q <= {q_max:.6g}, {len(found)} 个交点")
    return CommandResult(
        command="diagram",
        experiment=config.name,
        files=files,
        summary={"q_max": q_max, "a_max": a_max, "crossings": {c.label: c.q for c in found}},
    )


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------


def collect_intervals(config: ExperimentConfig) -> List[ActivatingInterval]:
    _couplings(config)
    return prediction_intervals(config.system(), config.build_potential(), config.interval_limit)


def format_interval_table(config: ExperimentConfig, intervals: Sequence[ActivatingInterval]) -> str:
    lines = [f"Experiment {config.name}: {_describe(config)}", "", "Activating intervals"]
    lines.append(f"{'name':<8}{'region':<8}{'x0 range':<26}{'q range':<26}{'E range':<26}flags")
    for name, iv in name_intervals(intervals):
        flags = ",".join(flag for flag, on in (("truncated", iv.truncated), ("narrow", iv.narrow)) if on)
        lines.append(
            f"{name:<8}{'U' + str(iv.region_order):<8}"
            f"{f'({iv.x0_range[0]:.6g}, {iv.x0_range[1]:.6g})':<26}"
            f"{f'({iv.q_range[0]:.6g}, {iv.q_range[1]:.6g})':<26}"
            f"{f'({iv.energy_range[0]:.6g}, {iv.energy_range[1]:.6g})':<26}{flags}"
        )
    lines += ["", "Predicted RMCE bands", f"{'x0 band':<28}{'RMCE':<8}intervals"]
    for band in predicted_bands(intervals, config.interval_limit):
        span = f"({band.lo:.6g}, {band.hi:.6g})"
        lines.append(f"{span:<28}{band.rmce.value:<8}{' '.join(band.names)}")
    return "\n".join(lines) + "\n"


def _write_intervals(config: ExperimentConfig, intervals: Sequence[ActivatingInterval], directory: str) -> List[str]:
    rows = [
        (
            iv.mode_index,
            name,
            iv.region_order,
            *iv.q_range,
            *iv.x0_range,
            *iv.energy_range,
            iv.truncated,
            iv.narrow,
        )
        for name, iv in name_intervals(intervals)
    ]
    header = ("mode", "name", "region", "q_lo", "q_hi", "x0_lo", "x0_hi", "E_lo", "E_hi", "truncated", "narrow")
    return [
        write_csv(os.path.join(directory, INTERVALS_FILE), header, rows),
        write_text(os.path.join(directory, INTERVALS_TABLE_FILE), format_interval_table(config, intervals)),
    ]


def cmd_intervals(config: ExperimentConfig, out_dir: Optional[str] = None) -> CommandResult:
    """每个残余模态的激活区间 (q, x0, E) 与按集合运算得到的 none/z1/z2/both 带"""
    intervals = collect_intervals(config)
    files = _write_intervals(config, intervals, _output_dir(config, out_dir))
    return CommandResult(
        command="intervals",
        experiment=config.name,
        files=files,
        summary={name: list(iv.x0_range) for name, iv in name_intervals(intervals)},
    )


# ---------------------------------------------------------------------------
# simulate / sweep
# ---------------------------------------------------------------------------


def cmd_simulate(config: ExperimentConfig, x0: Optional[float] = None, out_dir: Optional[str] = None) -> CommandResult:
    """单个 x0 的非线性轨迹: trajectory.csv 与 residual_modes.svg"""
    system = config.system(x0)
    trajectory = integrate(system, config.build_potential(), config.t_end, config.integration_settings())
    directory = _output_dir(config, out_dir)
    files = [
        write_trajectory_csv(trajectory, os.path.join(directory, TRAJECTORY_FILE)),
        plot_residual_modes(
            trajectory.t,
            trajectory.z1,
            trajectory.z2,
            os.path.join(directory, RESIDUAL_PLOT_FILE),
            title=f"{config.name}: x0 = {system.x0:.6g}",
        ),
    ]
    summary = {
        "x0": system.x0,
        "max_abs_z1": float(np.max(np.abs(trajectory.z1))),
        "max_abs_z2": float(np.max(np.abs(trajectory.z2))),
        "energy_drift": trajectory.energy_drift,
        "degraded": trajectory.degraded,
    }
    try:
        verdict = detect(trajectory, config.threshold, config.secondary_lag)
        summary.update(
            verdict=verdict.classification.value,
            G1=verdict.growth(1).growth_factor,
            G2=verdict.growth(2).growth_factor,
            secondary=[f"z{m.mode_index}" for m in verdict.modes if m.secondary],
        )
    except UndefinedGrowthError as e:
        logger.info(f"未给出 RMCE 结论: {e}")
        summary["verdict"] = None
    return CommandResult(command="simulate", experiment=config.name, files=files, summary=summary)


def run_sweep(config: ExperimentConfig, parallel: bool = True) -> List[SweepRow]:
    potential = config.build_potential()
    grid = config.x0_grid()
    intervals = None
    if potential.mathieu_couplings is not None:
        limit = max(config.interval_limit, max(grid) + 0.1)
        intervals = prediction_intervals(config.system(), potential, limit)
    return sweep(
        config.system(),
        potential,
        grid,
        threshold=config.threshold,
        settings=config.integration_settings(),
        t_end=config.t_end,
        intervals=intervals,
        parallel=parallel,
        secondary_lag=config.secondary_lag,
    )


def _agreement_counts(rows: Sequence[SweepRow]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for row in rows:
        counts[row.agreement.value] = counts.get(row.agreement.value, 0) + 1
    return counts


def cmd_sweep(config: ExperimentConfig, out_dir: Optional[str] = None, parallel: bool = True) -> CommandResult:
    """x0 网格扫描: sweep.csv 与 rmce_table.txt"""
    rows = run_sweep(config, parallel)
    directory = _output_dir(config, out_dir)
    files = [
        write_sweep_csv(rows, os.path.join(directory, SWEEP_FILE)),
        write_text(os.path.join(directory, RMCE_TABLE_FILE), format_rmce_table(rows)),
    ]
    return CommandResult(command="sweep", experiment=config.name, files=files, summary=_agreement_counts(rows))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def cmd_report(config: ExperimentConfig, out_dir: Optional[str] = None, parallel: bool = True) -> CommandResult:
    """
    一次完成一个实验的全部输出，并在 report.txt 中汇总:
    临界能量、激活区间与预测带、交点、扫描结论及一致性统计
    """
    directory = _output_dir(config, out_dir)
    files: List[str] = []
    sections = [f"Experiment {config.name}: {_describe(config)}", ""]
    summary: Dict[str, object] = {}

    couplings = config.build_potential().mathieu_couplings
    if couplings is not None:
        critical = first_stability_threshold(config.system(), couplings)
        summary["critical_energy"] = critical
        sections += [f"Critical energy: {critical:.6g}", ""]

        intervals = collect_intervals(config)
        diagram_result = cmd_diagram(config, out_dir=directory)
        files += _write_intervals(config, intervals, directory) + diagram_result.files
        table = format_interval_table(config, intervals)
        sections += table.splitlines()[2:] + [""]
        sections.append("Crossings (q)")
        sections += [f"  {label}: {q:.6g}" for label, q in diagram_result.summary["crossings"].items()]
        sections.append("")
    else:
        sections += [
            f"Potential {config.potential!r} linearizes to constant coefficients; "
            "no parametric lines, intervals or critical energy.",
            "",
        ]

    rows = run_sweep(config, parallel)
    files.append(write_sweep_csv(rows, os.path.join(directory, SWEEP_FILE)))
    files.append(write_text(os.path.join(directory, RMCE_TABLE_FILE), format_rmce_table(rows)))
    counts = _agreement_counts(rows)
    summary["agreement"] = counts
    sections += [
        "Observed RMCE (threshold {:.6g}, t_end {:.6g}, secondary lag {:.6g})".format(
            config.threshold, config.t_end, config.secondary_lag
        )
    ]
    sections += format_rmce_table(rows).splitlines()
    sections += ["", "Agreement: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))]

    files.append(write_text(os.path.join(directory, REPORT_FILE), "\n".join(sections) + "\n"))
    return CommandResult(command="report", experiment=config.name, files=files, summary=summary)
