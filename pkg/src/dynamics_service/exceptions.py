class DynamicsError(Exception):
    """动力学积分基础异常"""

    pass


class PotentialError(DynamicsError, ValueError):
    """势能不满足 ∇U(y,0,0) = 0 等前提"""

    pass


class IntegrationError(DynamicsError):
    """积分器失败 (步长下溢等)"""

    pass
