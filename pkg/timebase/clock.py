"""Virtual and wall clocks sharing one interface.

Simulation runs exclusively on `VirtualClock`; `WallClock` paces the same
loops against real time for the optional real-time mode.
"""

import asyncio
import time
from abc import ABC, abstractmethod

from config.errors import ClockError

Timestamp = float
Duration = float


class Clock(ABC):
    @property
    @abstractmethod
    def now(self) -> Timestamp:
        """Current time in seconds"""

    @abstractmethod
    def advance_to(self, t: Timestamp) -> None:
        """Move time forward to t; never backwards"""


class VirtualClock(Clock):
    """Deterministic clock: time moves only when advanced"""

    def __init__(self, start: Timestamp = 0.0):
        if start < 0:
            raise ClockError("start must be non-negative")
        self._now = float(start)

    @property
    def now(self) -> Timestamp:
        return self._now

    def advance_to(self, t: Timestamp) -> None:
        if t < self._now:
            raise ClockError(f"cannot move clock backwards: {t} < {self._now}")
        self._now = float(t)


class WallClock(Clock):
    """Real-time adapter: seconds since construction, advancing by sleeping"""

    def __init__(self):
        self._origin = time.monotonic()
        self._floor = 0.0

    @property
    def now(self) -> Timestamp:
        return max(time.monotonic() - self._origin, self._floor)

    def advance_to(self, t: Timestamp) -> None:
        if t < self._floor:
            raise ClockError(f"cannot move clock backwards: {t} < {self._floor}")
        if (remaining := t - self.now) > 0:
            time.sleep(remaining)
        self._floor = t

    async def sleep_until(self, t: Timestamp) -> None:
        if t < self._floor:
            raise ClockError(f"cannot move clock backwards: {t} < {self._floor}")
        if (remaining := t - self.now) > 0:
            await asyncio.sleep(remaining)
        self._floor = t
