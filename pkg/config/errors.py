class LatencyBenchError(Exception):
    """Root of every error raised by the bench"""


class ClockError(LatencyBenchError, ValueError):
    pass


class DegenerateRotationError(LatencyBenchError, ValueError):
    pass


class FrameMismatchError(LatencyBenchError, ValueError):
    pass


class UnobservableShiftError(LatencyBenchError, ValueError):
    pass


class EmptyInputError(LatencyBenchError, ValueError):
    pass


class DataShapeError(LatencyBenchError, ValueError):
    pass


class ExpertFailureError(LatencyBenchError):
    def __init__(self, seed: int, message: str):
        super().__init__(f"expert failed for seed {seed}: {message}")
        self.seed = seed


class MissingArtifactError(LatencyBenchError, FileNotFoundError):
    pass
