import logging
import platform
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import psutil

from config.settings import MAX_WORKERS, MEMORY_LIMIT_MB

logger = logging.getLogger('roothall')

T = TypeVar('T')
R = TypeVar('R')


def set_worker_limits():
    """Lower the priority of the counting process so interactive work stays responsive."""
    try:
        process = psutil.Process()
        if platform.system() == 'Windows':
            process.nice(psutil.BELOW_NORMAL_PRIORITY_CLASS)
        elif process.nice() < 10:
            process.nice(10)
    except Exception as e:
        logger.warning(f"Could not lower worker priority: {e}")


def optimal_workers() -> int:
    cpu_count = psutil.cpu_count() or 1
    memory_gb = psutil.virtual_memory().total / (1024 ** 3)
    return min(MAX_WORKERS, max(1, cpu_count // 2), max(1, int(memory_gb)))


class ResourceLimitedThreadPoolExecutor(ThreadPoolExecutor):
    """ThreadPoolExecutor that bounds in-flight counting jobs and watches memory."""

    def __init__(self, max_workers=None, thread_name_prefix='roothall'):
        max_workers = max_workers or optimal_workers()
        super().__init__(max_workers, thread_name_prefix=thread_name_prefix)
        self._active_tasks = 0
        self._lock = threading.Lock()
        self._slots = threading.BoundedSemaphore(2 * max_workers)
        self._memory_threshold = MEMORY_LIMIT_MB * 1024 * 1024
        self._limits_applied = False

    def submit(self, fn, *args, **kwargs):
        self._slots.acquire()
        with self._lock:
            memory_use = psutil.Process().memory_info().rss
            if memory_use > self._memory_threshold:
                logger.warning(f"High memory usage: {memory_use / 1024 / 1024:.2f}MB")
            self._active_tasks += 1
        future = super().submit(self._wrapped_fn, fn, *args, **kwargs)
        future.add_done_callback(self._task_done)
        return future

    def _wrapped_fn(self, fn, *args, **kwargs):
        with self._lock:
            first = not self._limits_applied
            self._limits_applied = True
        if first:
            set_worker_limits()
        try:
            return fn(*args, **kwargs)
        except Exception as e:
            logger.error(f"Counting job {getattr(fn, '__name__', fn)} failed: {e}")
            raise

    def _task_done(self, future):
        with self._lock:
            self._active_tasks -= 1
        self._slots.release()

    @property
    def active_tasks(self) -> int:
        with self._lock:
            return self._active_tasks

    def shutdown(self, wait=True, **kwargs):
        logger.debug("Shutting down the counting pool")
        super().shutdown(wait=wait, **kwargs)


def run_jobs(fn: Callable[[T], R], items: Iterable[T], max_workers: int = None) -> List[R]:
    """
    Apply fn to every item on a resource-limited pool, keeping input order.

    A single worker runs inline, so nested calls never wait on their own pool.
    """
    items = list(items)
    workers = max_workers or optimal_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ResourceLimitedThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, item) for item in items]
        return [f.result() for f in futures]


class ResourceMonitor:
    def __init__(self, warning_cpu_percent=90, warning_memory_percent=80, interval=5.0):
        self.warning_cpu_percent = warning_cpu_percent
        self.warning_memory_percent = warning_memory_percent
        self.interval = interval
        self._stop_event = threading.Event()
        self._monitor_thread = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc):
        self.stop()

    def start(self):
        """Start monitoring resources."""
        self._monitor_thread = threading.Thread(target=self._monitor_loop, daemon=True)
        self._monitor_thread.start()

    def stop(self):
        """Stop monitoring resources."""
        self._stop_event.set()
        if self._monitor_thread:
            self._monitor_thread.join()

    def sample(self) -> dict:
        process = psutil.Process()
        with process.oneshot():
            rss = process.memory_info().rss
            cpu = process.cpu_percent()
        return {'cpu_percent': cpu, 'rss_mb': rss / 1024 / 1024,
                'system_memory_percent': psutil.virtual_memory().percent}

    def _monitor_loop(self):
        while not self._stop_event.is_set():
            try:
                stats = self.sample()
                if stats['cpu_percent'] > self.warning_cpu_percent:
                    logger.warning(f"Process CPU usage high: {stats['cpu_percent']}%")
                if stats['system_memory_percent'] > self.warning_memory_percent:
                    logger.warning(f"High memory usage detected: {stats['system_memory_percent']}%")
                if stats['rss_mb'] > MEMORY_LIMIT_MB:
                    logger.warning(f"Process memory usage high: {stats['rss_mb']:.2f}MB")
            except Exception as e:
                logger.error(f"Error in resource monitor: {e}")
            self._stop_event.wait(self.interval)
