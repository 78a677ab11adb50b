"""
commands - 命令行子命令: diagram / intervals / simulate / sweep / report
"""

from .config_loader import load_config_file, preset_config, resolve_config
from .experiment import cmd_diagram, cmd_intervals, cmd_report, cmd_simulate, cmd_sweep
from .exceptions import HarnessError, ConfigError

__all__ = [
    "load_config_file",
    "preset_config",
    "resolve_config",
    "cmd_diagram",
    "cmd_intervals",
    "cmd_report",
    "cmd_simulate",
    "cmd_sweep",
    "HarnessError",
    "ConfigError",
]
