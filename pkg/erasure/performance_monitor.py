"""性能监控模块

提供性能监控装饰器，用于跟踪验证、搜索等穷举计算的执行时间和内存使用。
"""

import functools
import logging
import os
import time
from typing import Any, Callable, Optional

import psutil

logger = logging.getLogger(__name__)


def _rss_mb() -> Optional[float]:
    """当前进程常驻内存（MB），获取失败返回None"""
    try:
        return psutil.Process().memory_info().rss / 1024 / 1024
    except psutil.Error as e:
        logger.debug(f"无法获取内存信息: {e}")
        return None


def monitor_performance(track_memory: bool = False):
    """性能监控装饰器

    Args:
        track_memory: 是否跟踪内存使用
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            start_time = time.perf_counter()
            start_memory = _rss_mb() if track_memory else None

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                logger.error(f"[性能] {func.__name__} 执行失败，耗时: {execution_time:.3f}秒，错误: {e}")
                raise

            execution_time = time.perf_counter() - start_time
            memory_info = ""
            if start_memory is not None:
                end_memory = _rss_mb()
                if end_memory is not None:
                    memory_info = (f", 内存: {start_memory:.1f}MB -> {end_memory:.1f}MB "
                                   f"({end_memory - start_memory:+.1f}MB)")
            logger.info(f"[性能] {func.__name__} 执行时间: {execution_time:.3f}秒{memory_info}")
            return result

        return wrapper
    return decorator


def log_system_info():
    """记录系统信息"""
    try:
        memory = psutil.virtual_memory()
        logger.info(f"[系统] CPU: {psutil.cpu_count() or os.cpu_count()}核, "
                    f"内存: {memory.available / 1024 ** 3:.1f}GB/{memory.total / 1024 ** 3:.1f}GB "
                    f"({memory.percent}%)")
    except psutil.Error as e:
        logger.warning(f"获取系统信息失败: {e}")


class PerformanceTracker:
    """性能跟踪器

    用于手动跟踪一段计算的耗时，验证报告的 elapsed 由它给出。
    """

    def __init__(self, name: str):
        self.name = name
        self.start_time = None

    def start(self) -> 'PerformanceTracker':
        """开始跟踪"""
        self.start_time = time.perf_counter()
        return self

    def stop(self) -> float:
        """停止跟踪并返回耗时（秒）"""
        if self.start_time is None:
            raise RuntimeError("必须先调用 start() 方法")
        execution_time = time.perf_counter() - self.start_time
        logger.debug(f"[性能跟踪] {self.name}: {execution_time:.3f}秒")
        return execution_time
