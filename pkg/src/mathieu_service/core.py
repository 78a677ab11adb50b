import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal

from config.app_config import (
    BOUNDARY_TOLERANCE,
    CONVERGENCE_TOL,
    MONODROMY_ATOL,
    MONODROMY_RTOL,
    TRUNCATION_CHECK_EXTRA,
)
from .schemas import (
    CharacteristicCurveId,
    CurveFamily,
    MathieuPoint,
    MonodromyMatrix,
    StabilityClass,
    StabilityVerdict,
)
from .exceptions import (
    CharacteristicValueError,
    InvalidParameterError,
    MonodromyError,
)
from .utils import block_index, hill_block, truncation_order

logger = logging.getLogger(__name__)

# 系数 a + 2q cos(2t) 的周期
PERIOD = math.pi


def _check_q(q: float):
    if not math.isfinite(q) or q < 0:
        raise InvalidParameterError(f"q must be finite and non-negative, got {q}")


def _block_eigenvalues(family: CurveFamily, odd: bool, q: float, size: int, count: int) -> np.ndarray:
    """求 Hill 块最小的 count 个特征值"""
    diag, off = hill_block(family, odd, q, size)
    try:
        return eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
    except (LinAlgError, ValueError) as e:
        logger.error(f"Hill 块特征值求解失败 family={family.value} odd={odd} q={q}: {e}")
        raise CharacteristicValueError(f"Eigen-solve failed at q={q}, truncation={size}: {e}") from e


def characteristic_value(
    curve: CharacteristicCurveId, q: float, truncation: Optional[int] = None
) -> float:
    """
    Mathieu 特征值 a_n(q) 或 b_n(q)

    用截断 N 和 N+16 各求一次，两者不一致时报告未收敛而不是返回低精度结果。
    """
    _check_q(q)
    size = truncation or truncation_order(curve.order, q)
    odd = curve.order % 2 == 1
    index = block_index(curve)

    value = float(_block_eigenvalues(curve.family, odd, q, size, index + 1)[index])
    check = float(
        _block_eigenvalues(curve.family, odd, q, size + TRUNCATION_CHECK_EXTRA, index + 1)[index]
    )
    if abs(value - check) > CONVERGENCE_TOL * max(1.0, abs(value)):
        logger.error(f"{curve.label}({q}) 截断 {size} 未收敛: {value} vs {check}")
        raise CharacteristicValueError(
            f"{curve.label}(q={q}) did not converge at truncation {size}: |Δ|={abs(value - check):.3e}"
        )
    return value


def characteristic_spectrum(q: float, max_order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    一次求出 a_0..a_max 与 b_1..b_max

    Returns:
        (a, b): a[n] = a_n(q)；b[n] = b_n(q)，b[0] 为 NaN
    """
    _check_q(q)
    if max_order < 1:
        raise InvalidParameterError(f"max_order must be >= 1, got {max_order}")
    size = truncation_order(max_order, q)

    a = np.empty(max_order + 1)
    b = np.full(max_order + 1, np.nan)
    a[0::2] = _block_eigenvalues(CurveFamily.A, False, q, size, max_order // 2 + 1)
    a[1::2] = _block_eigenvalues(CurveFamily.A, True, q, size, (max_order + 1) // 2)
    b[1::2] = _block_eigenvalues(CurveFamily.B, True, q, size, (max_order + 1) // 2)
    if max_order >= 2:
        b[2::2] = _block_eigenvalues(CurveFamily.B, False, q, size, max_order // 2)
    return a, b


def classify_by_curves(point: MathieuPoint) -> Tuple[StabilityClass, int]:
    """
    按特征曲线划分判定 (q, a) 所在区域

    数出小于 a 的特征值个数 m：m 为偶数时点位于 U_{m/2} (m=0 即 a < a_0)，
    m 为奇数时位于 S_{(m-1)/2}。

    Returns:
        (稳定性, 区域阶数 n)
    """
    q, a = point.q, point.a
    max_order = math.ceil(math.sqrt(abs(a) + 2.0 * q)) + 2
    while True:
        a_values, b_values = characteristic_spectrum(q, max_order)
        values = np.concatenate([a_values, b_values[1:]])
        if min(a_values[-1], b_values[-1]) > a:
            break
        max_order *= 2

    tol = 1e-10 * max(1.0, abs(a))
    if np.min(np.abs(values - a)) <= tol:
        m = int(np.count_nonzero(values < a - tol))
        return StabilityClass.BOUNDARY, (m + 1) // 2
    m = int(np.count_nonzero(values < a))
    if m % 2 == 0:
        return StabilityClass.UNSTABLE, m // 2
    return StabilityClass.STABLE, (m - 1) // 2


def classify_column(q: float, a_values) -> Tuple[np.ndarray, np.ndarray]:
    """
    同一 q 上一列 a 值的批量判定 (稳定性图网格用)

    与 classify_by_curves 计数规则相同，但只求一次特征值；恰好落在曲线上的点不单独标记。

    Returns:
        (是否不稳定, 区域阶数)
    """
    _check_q(q)
    a_values = np.asarray(a_values, dtype=float)
    top = float(np.max(a_values))
    max_order = math.ceil(math.sqrt(abs(top) + 2.0 * q)) + 2
    while True:
        spectrum_a, spectrum_b = characteristic_spectrum(q, max_order)
        if min(spectrum_a[-1], spectrum_b[-1]) > top:
            break
        max_order *= 2
    values = np.sort(np.concatenate([spectrum_a, spectrum_b[1:]]))
    counts = np.searchsorted(values, a_values, side="left")
    unstable = counts % 2 == 0
    orders = np.where(unstable, counts // 2, (counts - 1) // 2)
    return unstable, orders


def _mathieu_rhs(t, y, a, q):
    stiffness = a + 2.0 * q * np.cos(2.0 * t)
    return [y[1], -stiffness * y[0], y[3], -stiffness * y[2]]


def monodromy(point: MathieuPoint, tol: float = MONODROMY_RTOL) -> MonodromyMatrix:
    """
    ξ'' + (a + 2q cos 2t) ξ = 0 的单值矩阵

    系数为偶函数，只需把偶解 ξ1 (ξ1(0)=1, ξ1'(0)=0) 与奇解 ξ2 (ξ2(0)=0, ξ2'(0)=1)
    积分到 t = π/2，再由

        ξ1(π) = ξ2'(π) = ξ1 ξ2' + ξ1' ξ2,   ξ2(π) = 2 ξ2 ξ2',   ξ1'(π) = 2 ξ1 ξ1'

    (右侧取 t = π/2 处的值) 拼出整个周期。行列式等于 π/2 处 Wronskian 的平方。
    内部积分容差比 tol 小三个数量级。
    """
    rtol = max(tol * 1e-3, 1e-13)
    sol = solve_ivp(
        _mathieu_rhs,
        (0.0, PERIOD / 2.0),
        [1.0, 0.0, 0.0, 1.0],
        method="DOP853",
        rtol=rtol,
        atol=MONODROMY_ATOL,
        args=(point.a, point.q),
    )
    if not sol.success:
        logger.error(f"单值矩阵积分失败 (q={point.q}, a={point.a}): {sol.message}")
        raise MonodromyError(f"Monodromy integration failed at {point}: {sol.message}")

    xi1, dxi1, xi2, dxi2 = sol.y[:, -1]
    diagonal = xi1 * dxi2 + dxi1 * xi2
    matrix = MonodromyMatrix(m11=diagonal, m12=2.0 * xi2 * dxi2, m21=2.0 * xi1 * dxi1, m22=diagonal)

    scale = max(1.0, abs(matrix.m11 * matrix.m22) + abs(matrix.m12 * matrix.m21))
    if abs(matrix.determinant - 1.0) > 10.0 * tol * scale:
        logger.error(f"单值矩阵行列式偏离 1: det={matrix.determinant} at {point}")
        raise MonodromyError(
            f"Monodromy determinant {matrix.determinant!r} violates Liouville bound at {point}"
        )
    return matrix


def _verdict_of(matrix: MonodromyMatrix, boundary_tolerance: float) -> StabilityVerdict:
    magnitude = abs(matrix.trace)
    if magnitude < 2.0 - boundary_tolerance:
        stability = StabilityClass.STABLE
    elif magnitude > 2.0 + boundary_tolerance:
        stability = StabilityClass.UNSTABLE
    else:
        stability = StabilityClass.BOUNDARY
    return StabilityVerdict(stability=stability, trace_magnitude=magnitude, margin=magnitude - 2.0)


def classify(point: MathieuPoint, boundary_tolerance: float = BOUNDARY_TOLERANCE) -> StabilityVerdict:
    """Floquet 判定: |trace| < 2 稳定，> 2 不稳定，容差内为边界"""
    return _verdict_of(monodromy(point), boundary_tolerance)


def growth_rate(point: MathieuPoint, horizon: float = PERIOD) -> float:
    """
    最大 Floquet 乘子模在 horizon 时长上的放大倍数 ρ^(horizon/π)

    horizon=π 时即每个周期的乘子模；稳定点与边界点返回 1。
    """
    if not horizon > 0:
        raise InvalidParameterError(f"horizon must be positive, got {horizon}")
    matrix = monodromy(point)
    if not _verdict_of(matrix, BOUNDARY_TOLERANCE).is_unstable:
        return 1.0
    multipliers = np.linalg.eigvals(np.array(matrix.as_rows()))
    rho = float(np.max(np.abs(multipliers)))
    return rho ** (horizon / PERIOD)
