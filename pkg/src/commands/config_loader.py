import configparser
import logging
import os
from typing import Any, Dict, Optional

from pydantic import ValidationError

from config.presets import PRESETS
from models.experiment import ExperimentConfig
from utils.file_utils import allowed_file
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

# 配置节中可以用 base = <预设名> 继承内置预设，其余键覆盖预设的值
BASE_KEY = "base"


def _validate(values: Dict[str, Any], source: str) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"Invalid experiment config ({source}): {problems}") from e


def preset_config(name: str) -> ExperimentConfig:
    if name not in PRESETS:
        raise ConfigError(f"Unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    return _validate({"name": name, **PRESETS[name]}, f"preset {name}")


def load_config_file(path: str, section: Optional[str] = None) -> ExperimentConfig:
    """
    读取 INI 实验配置

    section 为 None 时取文件中的第一节；节名即实验名。
    """
    if not os.path.isfile(path):
        raise ConfigError(f"Config file not found: {path}")
    if not allowed_file(path):
        raise ConfigError(f"Unsupported config file extension: {path}")

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e

    sections = parser.sections()
    if not sections:
        raise ConfigError(f"{path} contains no experiment section")
    name = section or sections[0]
    if name not in sections:
        raise ConfigError(f"Section [{name}] not found in {path}; available: {', '.join(sections)}")

    values: Dict[str, Any] = dict(parser.items(name))
    base = values.pop(BASE_KEY, None)
    if base is not None:
        if base not in PRESETS:
            raise ConfigError(f"[{name}] base {base!r} is not a known preset")
        values = {**PRESETS[base], **values}
    logger.info(f"从 {path} 读取实验 [{name}]")
    return _validate({"name": name, **values}, f"{path} [{name}]")


def resolve_config(
    config_path: Optional[str] = None,
    preset: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    --config 与 --preset 的组合:
    只给 --preset 时取内置预设；给出 --config 时 --preset 指定文件中的节名。
    overrides 中值为 None 的项被忽略。
    """
    if config_path:
        config = load_config_file(config_path, preset)
    elif preset:
        config = preset_config(preset)
    else:
        raise ConfigError("Either --config or --preset is required")

    updates = {k: v for k, v in (overrides or {}).items() if v is not None}
    if not updates:
        return config
    return _validate({**config.model_dump(), **updates}, f"{config.name} with command-line overrides")
