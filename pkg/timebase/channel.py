import heapq
from dataclasses import dataclass, field
from typing import Generic, TypeVar

from timebase.clock import Duration, Timestamp

M = TypeVar("M")


@dataclass(order=True)
class _Pending(Generic[M]):
    available_at: Timestamp
    seq_no: int
    message: M = field(compare=False)


class DelayedChannel(Generic[M]):
    """Transport with a constant delay.

    A message sent at `now` becomes visible to `poll` at `now + delay`.
    Ties on availability are broken by send order.
    """

    def __init__(self, delay: Duration = 0.0, name: str = ""):
        if delay < 0:
            raise ValueError("delay must be non-negative")
        self.delay = float(delay)
        self.name = name
        self._queue: list[_Pending[M]] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._queue)

    def send(self, message: M, now: Timestamp) -> Timestamp:
        available_at = now + self.delay
        heapq.heappush(self._queue, _Pending(available_at, self._next_seq, message))
        self._next_seq += 1
        return available_at

    def poll(self, now: Timestamp) -> list[M]:
        ripe: list[M] = []
        while self._queue and self._queue[0].available_at <= now:
            ripe.append(heapq.heappop(self._queue).message)
        return ripe

    def next_available(self) -> Timestamp | None:
        return self._queue[0].available_at if self._queue else None

    def clear(self) -> None:
        self._queue.clear()
