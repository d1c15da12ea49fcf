import numpy as np
import pytest

from config.errors import ClockError
from timebase import DelayedChannel, EventQueue, VirtualClock


def test_message_visible_after_delay():
    ch = DelayedChannel(0.05)
    ch.send("a", 0.0)
    assert ch.poll(0.049) == []
    assert ch.poll(0.05) == ["a"]


def test_zero_delay_is_immediate():
    ch = DelayedChannel(0.0)
    ch.send("a", 1.0)
    assert ch.poll(1.0) == ["a"]


def test_fifo_in_send_order():
    ch = DelayedChannel(0.01)
    ch.send("first", 0.0)
    ch.send("second", 0.001)
    assert ch.poll(1.0) == ["first", "second"]


def test_equal_availability_keeps_send_order():
    ch = DelayedChannel(0.01)
    for i in range(5):
        ch.send(i, 0.0)
    assert ch.poll(0.01) == [0, 1, 2, 3, 4]


def test_poll_removes_only_ripe_messages():
    ch = DelayedChannel(0.1)
    assert ch.poll(0.0) == []
    ch.send("ripe", 0.0)
    ch.send("unripe", 0.05)
    assert ch.poll(0.1) == ["ripe"]
    assert ch.poll(0.1) == []
    assert len(ch) == 1
    assert ch.next_available() == pytest.approx(0.15)


def test_negative_delay_rejected():
    with pytest.raises(ValueError):
        DelayedChannel(-0.001)


def test_causality_under_random_schedule():
    rng = np.random.default_rng(7)
    ch = DelayedChannel(0.037)
    sent = sorted(rng.uniform(0.0, 1.0, 200))
    for i, t in enumerate(sent):
        ch.send((i, t), t)
    seen = []
    for now in np.arange(0.0, 1.2, 0.004):
        for i, t in ch.poll(now):
            assert now >= t + 0.037
            seen.append(i)
    assert seen == list(range(200))


def test_clock_advances_monotonically():
    clock = VirtualClock()
    clock.advance_to(0.1)
    assert clock.now == 0.1
    clock.advance_to(0.1)
    assert clock.now == 0.1


def test_clock_rejects_backward_jump():
    clock = VirtualClock(0.2)
    with pytest.raises(ClockError):
        clock.advance_to(0.1)


def test_event_queue_orders_by_time_then_submission():
    q = EventQueue()
    q.schedule(0.2, "late")
    q.schedule(0.1, "a")
    q.schedule(0.1, "b")
    order = []
    while q.has_pending():
        ts, payload = q.pop_next()
        order.append(payload)
        assert q.now == ts
    assert order == ["a", "b", "late"]
    assert q.pop_next() is None


def test_event_queue_rejects_past():
    q = EventQueue(VirtualClock(1.0))
    with pytest.raises(ClockError):
        q.schedule(0.5, "x")


def test_identical_schedules_deliver_identically():
    def run() -> list[int]:
        q = EventQueue()
        for i in range(50):
            q.schedule((i * 7 % 13) * 0.01, i)
        out = []
        while (event := q.pop_next()) is not None:
            out.append(event[1])
        return out

    assert run() == run()
