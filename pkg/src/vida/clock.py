"""Clock abstraction so the stream pacer can run on wall time or a test clock.

Sessions only ever ask "what time is it" and "wait until t".  The real clock
maps those onto the monotonic clock; the virtual clock jumps instantly, which
makes full sessions reproducible byte for byte.
"""

from __future__ import annotations

import time


class Clock:
    """Interface: monotonic microseconds since clock creation."""

    def now_micros(self) -> int:
        raise NotImplementedError

    def wait_until(self, t_micros: int) -> None:
        raise NotImplementedError


class RealClock(Clock):
    """Wall-clock time anchored at construction."""

    def __init__(self) -> None:
        self._epoch_ns = time.monotonic_ns()

    def now_micros(self) -> int:
        return (time.monotonic_ns() - self._epoch_ns) // 1000

    def wait_until(self, t_micros: int) -> None:
        delta = t_micros - self.now_micros()
        if delta > 0:
            time.sleep(delta / 1e6)


class VirtualClock(Clock):
    """Manually advanced clock; waiting jumps time forward instantly."""

    def __init__(self, start_micros: int = 0) -> None:
        self._now = start_micros

    def now_micros(self) -> int:
        return self._now

    def advance(self, delta_micros: int) -> None:
        if delta_micros < 0:
            raise ValueError(f"cannot advance clock by {delta_micros} us")
        self._now += delta_micros

    def wait_until(self, t_micros: int) -> None:
        if t_micros > self._now:
            self._now = t_micros
