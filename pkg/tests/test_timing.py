"""
Timing decorator
"""

import threading
from multiprocessing.pool import ThreadPool
from types import SimpleNamespace

import pytest

from holonomy2 import timing
from holonomy2.timing import TIMINGS, collected_timings, reset_timings, timeit


@timeit
def square(value):
    return value * value


def test_timeit_keeps_the_result_and_accumulates():
    reset_timings()
    assert square(3) == 9
    square(4)
    assert list(collected_timings()) == ["square"]
    assert TIMINGS["square"] >= 0


def test_reset_forgets_everything():
    square(2)
    reset_timings()
    assert collected_timings() == {}


def test_concurrent_updates_are_not_lost(monkeypatch):
    ticks = threading.local()

    def fake_time():
        # start at 0, end one millisecond later, per thread
        ticks.odd = not getattr(ticks, "odd", False)
        return 0.0 if ticks.odd else 0.001

    monkeypatch.setattr(timing, "time", SimpleNamespace(time=fake_time))
    reset_timings()
    with ThreadPool(processes=8) as pool:
        pool.map(square, range(400))
    assert collected_timings()["square"] == pytest.approx(400.0)
    reset_timings()
