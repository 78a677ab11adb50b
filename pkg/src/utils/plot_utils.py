import logging
import os
from typing import Dict, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

logger = logging.getLogger(__name__)

# SVG 中的元素 id 与日期固定，保证同一输入输出相同的文件
matplotlib.rcParams["svg.hashsalt"] = "modal-capture"
SVG_METADATA = {"Date": None}


def _save(fig, path: str) -> str:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    fig.savefig(path, format="svg", metadata=SVG_METADATA, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"已写出 {path}")
    return path


def plot_residual_modes(t: np.ndarray, z1: np.ndarray, z2: np.ndarray, path: str, title: str = "") -> str:
    """z_1 红色实线，z_2 黑色虚线"""
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.plot(t, z1, color="red", linestyle="-", linewidth=0.8, label="z1")
    ax.plot(t, z2, color="black", linestyle="--", linewidth=0.8, label="z2")
    ax.set_xlim(t[0], t[-1])
    ax.set_xlabel("t")
    ax.legend(loc="upper right")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_stability_diagram(
    q_values: np.ndarray,
    a_values: np.ndarray,
    unstable: np.ndarray,
    curves: Dict[str, Tuple[np.ndarray, np.ndarray]],
    path: str,
    lines: Sequence[Tuple[str, float]] = (),
    points: Sequence[Tuple[str, float, float]] = (),
    title: Optional[str] = None,
) -> str:
    """
    (q, a) 平面上的稳定性图

    unstable 的形状为 (len(a_values), len(q_values))，不稳定区域着灰色；
    lines 为 (标签, 截距) 的斜率 2 直线，points 为 (标签, q, a) 的交点。
    """
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.contourf(q_values, a_values, unstable.astype(float), levels=[0.5, 1.5], colors=["0.8"])
    for label, (q, values) in curves.items():
        style = "-" if label.startswith("a") else "--"
        ax.plot(q, values, color="0.3", linestyle=style, linewidth=0.8)
    for label, intercept in lines:
        ax.plot(q_values, intercept + 2.0 * q_values, linewidth=1.2, label=label)
    for label, q, a in points:
        ax.plot([q], [a], marker="o", color="black", markersize=3)
        ax.annotate(label, (q, a), textcoords="offset points", xytext=(4, -10))
    ax.set_xlim(q_values[0], q_values[-1])
    ax.set_ylim(a_values[0], a_values[-1])
    ax.set_xlabel("q")
    ax.set_ylabel("a")
    if lines:
        ax.legend(loc="upper left")
    if title:
        ax.set_title(title)
    return _save(fig, path)
