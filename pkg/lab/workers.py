import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from utils.settings import STRONGSUM_THREADS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """
    Apply func to every item on a thread pool, results in input order.

    numpy releases the GIL inside the vectorized kernels, so threads overlap the heavy work.
    """
    workers = max(1, min(threads or STRONGSUM_THREADS, len(items) or 1))
    if workers == 1:
        return [func(item) for item in items]
    logger.debug(f"Dispatching {len(items)} configurations to {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
