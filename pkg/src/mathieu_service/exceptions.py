class MathieuError(Exception):
    """Mathieu 计算基础异常"""

    pass


class InvalidParameterError(MathieuError, ValueError):
    """参数非法 (q 为负、曲线编号非法等)"""

    pass


class CharacteristicValueError(MathieuError):
    """特征值求解失败或截断未收敛"""

    pass


class MonodromyError(MathieuError):
    """单值矩阵积分失败"""

    pass
