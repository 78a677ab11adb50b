from typing import Dict, Tuple

import numpy as np

from utils.file_utils import write_csv
from .potentials import Potential
from .schemas import STATE_FIELDS, Trajectory

TRAJECTORY_COLUMNS = ("t",) + STATE_FIELDS + ("E",)


def write_trajectory_csv(trajectory: Trajectory, path: str) -> str:
    """轨迹 CSV: t, y, z1, z2, vy, vz1, vz2, E"""
    table = np.column_stack((trajectory.t, trajectory.states, trajectory.energy))
    return write_csv(path, TRAJECTORY_COLUMNS, table.tolist())


def read_trajectory_csv(path: str) -> Dict[str, np.ndarray]:
    """读回 write_trajectory_csv 写出的文件，按列名返回数组"""
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip().split(",")
    if tuple(header) != TRAJECTORY_COLUMNS:
        raise ValueError(f"{path} is not a trajectory file: header {header}")
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: table[:, k] for k, name in enumerate(header)}


def finite_difference_gradient(
    potential: Potential, y: float, z1: float, z2: float, step: float = 1e-6
) -> Tuple[float, float, float]:
    """U 的中心差分梯度，步长按坐标量级缩放"""
    point = np.array([y, z1, z2], dtype=float)
    result = []
    for k in range(3):
        h = step * max(1.0, abs(point[k]))
        forward, backward = point.copy(), point.copy()
        forward[k] += h
        backward[k] -= h
        result.append((potential.value(*forward) - potential.value(*backward)) / (2.0 * h))
    return result[0], result[1], result[2]
