from timebase.channel import DelayedChannel
from timebase.clock import Clock, Duration, Timestamp, VirtualClock, WallClock
from timebase.events import EventQueue

__all__ = ["Clock", "DelayedChannel", "Duration", "EventQueue", "Timestamp", "VirtualClock", "WallClock"]
