import logging
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

from config import shared_state

logger = logging.getLogger(__name__)


@dataclass
class TaskResult:
    """单个任务的结果; 失败时 value 为 None，error 为异常描述"""

    index: int
    success: bool
    value: Any = None
    error: Optional[str] = None


def _run_one(func: Callable, index: int, item: Any) -> TaskResult:
    try:
        return TaskResult(index=index, success=True, value=func(item))
    except Exception as e:
        logger.error(f"Task {index} failed: {e}")
        return TaskResult(index=index, success=False, error=f"{type(e).__name__}: {e}")


def run_tasks(func: Callable, items: Sequence[Any], parallel: bool = True) -> List[TaskResult]:
    """
    对 items 逐个执行 func，结果按输入顺序返回

    parallel 为 True 且 MAX_WORKERS > 1 时提交到全局进程池 (func 必须是模块级函数)。
    单个任务失败不会中断其余任务。
    """
    if not parallel or shared_state.MAX_WORKERS <= 1 or len(items) <= 1:
        return [_run_one(func, index, item) for index, item in enumerate(items)]

    executor = shared_state.get_executor()
    futures = [executor.submit(func, item) for item in items]
    results = []
    for index, future in enumerate(futures):
        try:
            results.append(TaskResult(index=index, success=True, value=future.result()))
        except Exception as e:
            logger.error(f"Task {index} failed: {e}")
            results.append(TaskResult(index=index, success=False, error=f"{type(e).__name__}: {e}"))
    logger.info(f"{len(items)} 个任务完成，失败 {sum(not r.success for r in results)} 个")
    return results
