from sensing.assembler import ObservationAssembler, compensate_stream
from sensing.calibration import estimate_execution_latency, estimate_observation_latency
from sensing.gravity import (
    compensate,
    gravity_wrench_sensor,
    gravity_wrench_world,
    synthesize_measurement,
    wrench_to_sensor,
    wrench_to_sensor_direct,
)
from sensing.io import DemoHeader, demo_paths, read_demo, write_demo
from sensing.resample import MODALITIES, grid_ticks, remove_idle_segments, resample
from sensing.schema import (
    OBS_DIM,
    POSE_DIM,
    VISUAL_DIM,
    WRENCH_DIM,
    MassModel,
    Observation,
    StreamSample,
    Wrench,
)

__all__ = [
    "MODALITIES",
    "OBS_DIM",
    "POSE_DIM",
    "VISUAL_DIM",
    "WRENCH_DIM",
    "DemoHeader",
    "MassModel",
    "Observation",
    "ObservationAssembler",
    "StreamSample",
    "Wrench",
    "compensate",
    "compensate_stream",
    "demo_paths",
    "estimate_execution_latency",
    "estimate_observation_latency",
    "grid_ticks",
    "gravity_wrench_sensor",
    "gravity_wrench_world",
    "read_demo",
    "remove_idle_segments",
    "resample",
    "synthesize_measurement",
    "wrench_to_sensor",
    "wrench_to_sensor_direct",
    "write_demo",
]
