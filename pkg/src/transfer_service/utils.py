from typing import List, Sequence

from utils.file_utils import write_csv
from .schemas import SweepRow

SWEEP_COLUMNS = (
    "x0",
    "q",
    "E",
    "predicted_mode1_active",
    "predicted_mode2_active",
    "G1",
    "G2",
    "t_cross1",
    "t_cross2",
    "verdict",
    "secondary",
    "agreement",
)


def sweep_row_values(row: SweepRow) -> list:
    verdict = row.verdict
    growth = [verdict.growth(i) for i in (1, 2)] if verdict else [None, None]
    return [
        row.x0,
        row.q,
        row.energy,
        row.predicted[0],
        row.predicted[1],
        growth[0].growth_factor if verdict else None,
        growth[1].growth_factor if verdict else None,
        growth[0].first_crossing if verdict else None,
        growth[1].first_crossing if verdict else None,
        verdict.classification.value if verdict else None,
        next((f"z{m.mode_index}" for m in verdict.modes if m.secondary), None) if verdict else None,
        row.agreement.value,
    ]


def write_sweep_csv(rows: Sequence[SweepRow], path: str) -> str:
    return write_csv(path, SWEEP_COLUMNS, (sweep_row_values(row) for row in rows))


def format_rmce_table(rows: Sequence[SweepRow]) -> str:
    """
    将连续相同结论的 x0 合并成带状行:

        x0 range        E range                   RMCE    predicted
        0.1 - 0.3       0.005 - 0.045             none    none
    """
    bands: List[list] = []
    for row in rows:
        observed = row.verdict.classification.value if row.verdict else "failed"
        predicted = row.predicted_rmce.value
        if bands and bands[-1][4] == observed and bands[-1][5] == predicted:
            bands[-1][1], bands[-1][3] = row.x0, row.energy
        else:
            bands.append([row.x0, row.x0, row.energy, row.energy, observed, predicted])

    lines = [f"{'x0 range':<20}{'E range':<28}{'RMCE':<10}predicted"]
    for x_lo, x_hi, e_lo, e_hi, observed, predicted in bands:
        x_text = f"{x_lo:.6g} - {x_hi:.6g}" if x_hi != x_lo else f"{x_lo:.6g}"
        e_text = f"{e_lo:.6g} - {e_hi:.6g}" if e_hi != e_lo else f"{e_lo:.6g}"
        lines.append(f"{x_text:<20}{e_text:<28}{observed:<10}{predicted}")
    return "\n".join(lines) + "\n"
