from simworld.contact import (
    ContactResult,
    Penetration,
    contact_forces,
    contact_wrench,
    penetrations,
    sensor_offset_pose,
    settle,
)
from simworld.expert import Phase, ScriptedExpert
from simworld.plant import PlantState, SimulatedPlant, lag_step
from simworld.teleop import ControllerSample, load_controller_stream, teleop_map
from simworld.world import Delivery, InsertionWorld, SensorStreams

__all__ = [
    "ContactResult",
    "ControllerSample",
    "Delivery",
    "InsertionWorld",
    "Penetration",
    "Phase",
    "PlantState",
    "ScriptedExpert",
    "SensorStreams",
    "SimulatedPlant",
    "contact_forces",
    "contact_wrench",
    "lag_step",
    "load_controller_stream",
    "penetrations",
    "sensor_offset_pose",
    "settle",
    "teleop_map",
]
