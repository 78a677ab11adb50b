import csv
import logging
import os
from typing import Any, Iterable, Sequence

import numpy as np

from config.app_config import ALLOWED_EXTENSIONS

logger = logging.getLogger(__name__)


def allowed_file(filename: str) -> bool:
    """检查配置文件扩展名是否允许"""
    return "." in filename and filename.rsplit(".", 1)[1].lower() in ALLOWED_EXTENSIONS


def ensure_output_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def format_value(value: Any) -> str:
    """CSV 单元格: 浮点数用最短往返表示，布尔值小写，None 为空"""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """写出 CSV (固定换行符 "\\n")，返回路径"""
    parent = os.path.dirname(path)
    if parent:
        ensure_output_dir(parent)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.info(f"已写出 {path} ({count} 行)")
    return path


def write_text(path: str, text: str) -> str:
    parent = os.path.dirname(path)
    if parent:
        ensure_output_dir(parent)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"已写出 {path}")
    return path
