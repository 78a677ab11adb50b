import math
from typing import Tuple

import numpy as np

from config.app_config import MIN_TRUNCATION
from .schemas import CharacteristicCurveId, CurveFamily


def truncation_order(order: int, q: float) -> int:
    """Hill 矩阵截断阶数 N = max(50, 2·order + 8·⌈√q⌉)"""
    return max(MIN_TRUNCATION, 2 * order + 8 * math.ceil(math.sqrt(q)))


def hill_block(family: CurveFamily, odd: bool, q: float, size: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    返回对称三对角 Hill 矩阵的 (主对角, 次对角)

    四个块分别对应 cos(2kt), cos((2k+1)t), sin((2k+1)t), sin((2k+2)t) 的 Fourier 展开，
    其特征值依次为 a_{2r}, a_{2r+1}, b_{2r+1}, b_{2r+2}。
    """
    k = np.arange(size, dtype=float)
    off = np.full(size - 1, float(q))
    if family == CurveFamily.A and not odd:
        diag = (2.0 * k) ** 2
        # A_0 乘以 √2 后矩阵对称
        off[0] = math.sqrt(2.0) * q
    elif family == CurveFamily.A:
        diag = (2.0 * k + 1.0) ** 2
        diag[0] += q
    elif odd:
        diag = (2.0 * k + 1.0) ** 2
        diag[0] -= q
    else:
        diag = (2.0 * k + 2.0) ** 2
    return diag, off


def block_index(curve: CharacteristicCurveId) -> int:
    """曲线在所属 Hill 块中的特征值序号 (升序)"""
    if curve.family == CurveFamily.A:
        return curve.order // 2
    if curve.order % 2 == 1:
        return (curve.order - 1) // 2
    return curve.order // 2 - 1
