class HarnessError(Exception):
    """命令行前端基础异常"""

    pass


class ConfigError(HarnessError, ValueError):
    """配置文件或参数无效 (未知键、未知预设、范围错误)"""

    pass
