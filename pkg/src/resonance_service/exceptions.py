class ResonanceError(Exception):
    """共振图基础异常"""

    pass


class InvalidSystemError(ResonanceError, ValueError):
    """系统参数不满足约束"""

    pass


class IntervalScanError(ResonanceError):
    """扫描网格内找不到端点括号"""

    pass
