"""
Wall-clock timings of checks
"""

import threading
import time
from functools import wraps

from loguru import logger

TIMINGS = {}
TIMINGS_LOCK = threading.Lock()


def timeit(method):
    """
    timer decorator; stores milliseconds in TIMINGS under the function name
    """

    @wraps(method)
    def timed(*args, **kwargs):
        start = time.time()
        result = method(*args, **kwargs)
        end = time.time()
        total_time = round((end - start) * 1000, 3)
        with TIMINGS_LOCK:
            TIMINGS[method.__name__] = TIMINGS.get(method.__name__, 0) + total_time
        logger.debug("Total time for {} was {} milliseconds", method.__name__, total_time)
        return result

    return timed


def reset_timings():
    """
    Forget every recorded timing
    """
    with TIMINGS_LOCK:
        TIMINGS.clear()


def collected_timings():
    """
    Snapshot of the recorded timings, sorted by name
    """
    with TIMINGS_LOCK:
        return dict(sorted(TIMINGS.items()))
