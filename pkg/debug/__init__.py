from debug.log import Color, LogCollector, Logger, LogLevel, LogRecord

__all__ = ["Color", "LogCollector", "Logger", "LogLevel", "LogRecord"]
