# 共享状态和全局变量
from typing import Optional
from concurrent.futures import ProcessPoolExecutor
import threading
import os

MAX_WORKERS = int(os.getenv("MAX_WORKERS", 4))

# 全局进程池，按需创建
executor: Optional[ProcessPoolExecutor] = None
executor_lock = threading.Lock()


def get_executor() -> ProcessPoolExecutor:
    """获取 (必要时创建) 全局进程池"""
    global executor
    with executor_lock:
        if executor is None:
            executor = ProcessPoolExecutor(max_workers=MAX_WORKERS)
        return executor


def shutdown_executor():
    """关闭全局进程池"""
    global executor
    with executor_lock:
        if executor is not None:
            executor.shutdown(wait=True)
            executor = None
