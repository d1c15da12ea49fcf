import heapq
from dataclasses import dataclass, field
from typing import Any

from config.errors import ClockError
from timebase.clock import Timestamp, VirtualClock


@dataclass(order=True)
class _ScheduledEvent:
    """
    Heap item ordering policy:
    1. 'ts'
    2. 'seq_no' (submission order tie-break)
    """

    ts: Timestamp
    seq_no: int
    payload: Any = field(compare=False)


class EventQueue:
    """Deterministic event queue driving a virtual clock"""

    def __init__(self, clock: VirtualClock | None = None):
        self.clock = clock or VirtualClock()
        self._queue: list[_ScheduledEvent] = []
        self._next_seq = 0

    @property
    def now(self) -> Timestamp:
        return self.clock.now

    def schedule(self, ts: Timestamp, payload: Any) -> None:
        if ts < self.now:
            raise ClockError("cannot schedule in the past")
        heapq.heappush(self._queue, _ScheduledEvent(ts, self._next_seq, payload))
        self._next_seq += 1

    def has_pending(self) -> bool:
        return bool(self._queue)

    def peek_next_ts(self) -> Timestamp | None:
        return self._queue[0].ts if self._queue else None

    def pop_next(self) -> tuple[Timestamp, Any] | None:
        if not self._queue:
            return None
        event = heapq.heappop(self._queue)
        self.clock.advance_to(event.ts)
        return event.ts, event.payload
