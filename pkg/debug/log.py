import sys
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self


class Color(str, Enum):
    RESET = "\033[0m"
    GRAY = "\033[90m"
    RED = "\033[91m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    BLUE = "\033[94m"
    MAGENTA = "\033[95m"
    CYAN = "\033[96m"


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARN"
    ERROR = "ERROR"


_LEVEL_ORDER = {LogLevel.DEBUG: 0, LogLevel.INFO: 1, LogLevel.WARNING: 2, LogLevel.ERROR: 3}
_DEFAULT_COLOR = {
    LogLevel.DEBUG: Color.GRAY,
    LogLevel.INFO: Color.RESET,
    LogLevel.WARNING: Color.YELLOW,
    LogLevel.ERROR: Color.RED,
}


@dataclass
class LogRecord:
    level: LogLevel
    name: str
    message: str
    timestamp: datetime = field(default_factory=datetime.now)


class LogCollector:
    """Captures every record emitted while active; nests like a stack"""

    _active: list["LogCollector"] = []

    def __init__(self) -> None:
        self.records: list[LogRecord] = []

    def __enter__(self) -> Self:
        LogCollector._active.append(self)
        return self

    def __exit__(self, *exc) -> None:
        LogCollector._active.remove(self)

    def to_text(self) -> str:
        return "\n".join(f"{r.timestamp:%H:%M:%S} {r.level.value:5} [{r.name}] {r.message}" for r in self.records)

    @classmethod
    def _dispatch(cls, record: LogRecord) -> None:
        for collector in cls._active:
            collector.records.append(record)


class Logger:
    """Colored console logger: `HH:MM:SS LEVEL [Name] message`"""

    min_level: LogLevel = LogLevel.DEBUG
    stream = sys.stderr

    def __init__(self, name: str = ""):
        self.name = name

    def debug(self, message: str, color: Color | None = None) -> None:
        self._emit(LogLevel.DEBUG, message, color)

    def info(self, message: str, color: Color | None = None) -> None:
        self._emit(LogLevel.INFO, message, color)

    def warning(self, message: str, color: Color | None = None) -> None:
        self._emit(LogLevel.WARNING, message, color)

    def error(self, message: str, color: Color | None = None) -> None:
        self._emit(LogLevel.ERROR, message, color)

    @classmethod
    def set_level(cls, level: LogLevel | str) -> None:
        cls.min_level = LogLevel(level) if isinstance(level, str) else level

    def _emit(self, level: LogLevel, message: str, color: Color | None) -> None:
        record = LogRecord(level=level, name=self.name, message=message)
        LogCollector._dispatch(record)
        if _LEVEL_ORDER[level] < _LEVEL_ORDER[Logger.min_level]:
            return
        color = color or _DEFAULT_COLOR[level]
        prefix = f"[{self.name}] " if self.name else ""
        ts = record.timestamp.strftime("%H:%M:%S")
        print(f"{color.value}{ts} {level.value:5} {prefix}{message}{Color.RESET.value}", file=Logger.stream)
