class DetectionError(Exception):
    """能量捕获检测基础异常"""

    pass


class UndefinedGrowthError(DetectionError):
    """残余模态初始振幅为零，增长倍数无定义"""

    pass
