"""Gravity compensation of wrist F/T readings.

The world gravity wrench is expressed about the world origin
(m_g = p_com x f_g). It is carried into the sensor frame with the transpose
of `geometry.adjoint(wTf)`, which matches the rigid-body transport
f_s = R^T f, m_s = R^T (m - p x f).
"""

import numpy as np
from numpy.typing import NDArray

from geometry import Pose, adjoint
from sensing.schema import MassModel, Wrench


def gravity_wrench_world(m: MassModel, sensor_pose: Pose) -> Wrench:
    force = np.array([0.0, 0.0, -m.mass * m.g])
    com_world = sensor_pose.rotation @ np.asarray(m.com, dtype=np.float64) + sensor_pose.position
    return Wrench(force, np.cross(com_world, force), "world")


def wrench_to_sensor(w: Wrench, sensor_pose: Pose) -> Wrench:
    w.require("world")
    return Wrench.from_vector(adjoint(sensor_pose).T @ w.vector(), "sensor")


def wrench_to_sensor_direct(w: Wrench, sensor_pose: Pose) -> Wrench:
    """Rotate the force and re-take the moment about the sensor origin"""
    w.require("world")
    Rt = sensor_pose.rotation.T
    moment = Rt @ (w.moment - np.cross(sensor_pose.position, w.force))
    return Wrench(Rt @ w.force, moment, "sensor")


def gravity_wrench_sensor(m: MassModel, sensor_pose: Pose) -> Wrench:
    return wrench_to_sensor(gravity_wrench_world(m, sensor_pose), sensor_pose)


def compensate(measured: Wrench, sensor_pose: Pose, m: MassModel) -> Wrench:
    measured.require("sensor")
    if m.mass == 0:
        return measured
    return measured - gravity_wrench_sensor(m, sensor_pose)


def synthesize_measurement(
    contact: Wrench,
    sensor_pose: Pose,
    m: MassModel,
    noise_std: float = 0.0,
    rng: np.random.Generator | None = None,
) -> Wrench:
    """Raw sensor reading: contact wrench plus the load's weight, optionally noisy"""
    contact.require("sensor")
    force_s = sensor_pose.rotation.T @ np.array([0.0, 0.0, -m.mass * m.g])
    weight = Wrench(force_s, np.cross(np.asarray(m.com, dtype=np.float64), force_s), "sensor")
    reading = contact + weight
    if noise_std > 0 and rng is not None:
        noise: NDArray[np.float64] = rng.normal(0.0, noise_std, 6)
        noise[3:] *= 0.1
        reading = reading + Wrench.from_vector(noise)
    return reading
