"""Penalty contact between the peg and the fixed stud.

The TCP sits at the centre of the peg's bottom face. The stud is solid below
its top face for every x past `slot_x_min`, except for the channel cut into
it: floor at `floor_z`, side walls at +-slot_width/2 and an end wall at
`slot_x_max`. Beyond the end wall the stud continues, and a peg pushed into it
is pushed back out through whichever of the end wall and the stud top is
nearer.

Each solid face is a penalty skin `contact_skin` thick over a rigid core.
`settle` moves a position that reached the core back onto the skin.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import SceneConfig
from geometry import Pose, compose
from sensing.schema import Wrench

SLIDE_DEADBAND = 1e-4  # m/s

_UP = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True, eq=False, slots=True)
class ContactResult:
    force: NDArray[np.float64]  # world frame
    moment: NDArray[np.float64]  # world frame, about the TCP
    normal: float  # summed normal force magnitude

    @property
    def active(self) -> bool:
        return self.normal > 0.0

    @classmethod
    def none(cls) -> "ContactResult":
        return cls(np.zeros(3), np.zeros(3), 0.0)


@dataclass(frozen=True, eq=False, slots=True)
class Penetration:
    depth: float
    rate: float  # d(depth)/dt
    normal: NDArray[np.float64]  # points out of the solid
    point: NDArray[np.float64]


def normal_force(stiffness: float, damping: float, depth: float, rate: float) -> float:
    return max(stiffness * depth + damping * rate, 0.0)


def friction_force(mu: float, normal: float, velocity: NDArray[np.float64], n: NDArray[np.float64]) -> NDArray[np.float64]:
    tangential = velocity - (velocity @ n) * n
    speed = np.linalg.norm(tangential)
    if speed < SLIDE_DEADBAND or normal == 0.0:
        return np.zeros(3)
    return -mu * normal * tangential / speed


def penetrations(scene: SceneConfig, position: ArrayLike, velocity: ArrayLike = (0.0, 0.0, 0.0)) -> list[Penetration]:
    p = np.asarray(position, dtype=np.float64)
    v = np.asarray(velocity, dtype=np.float64)
    half_l, half_w = scene.peg_length_x / 2, scene.peg_width / 2
    top = scene.floor_z + scene.slot_depth
    cy, half_slot = scene.slot_center_y, scene.slot_width / 2

    if p[0] + half_l <= scene.slot_x_min or p[2] >= top:
        return []

    out: list[Penetration] = []
    z_mid = (p[2] + min(p[2] + scene.peg_height, top)) / 2
    if p[2] < scene.floor_z:
        out.append(Penetration(scene.floor_z - p[2], -v[2], _UP, p.copy()))
    if p[0] - half_l < scene.slot_x_max:
        if (d := p[1] + half_w - (cy + half_slot)) > 0:
            out.append(Penetration(d, v[1], np.array([0.0, -1.0, 0.0]), np.array([p[0], p[1] + half_w, z_mid])))
        if (d := (cy - half_slot) - (p[1] - half_w)) > 0:
            out.append(Penetration(d, -v[1], np.array([0.0, 1.0, 0.0]), np.array([p[0], p[1] - half_w, z_mid])))
    if (d := p[0] + half_l - scene.slot_x_max) > 0:
        rise = top - p[2]
        if d <= rise:
            out.append(Penetration(d, v[0], np.array([-1.0, 0.0, 0.0]), np.array([p[0] + half_l, p[1], z_mid])))
        else:
            out.append(Penetration(rise, -v[2], _UP, p.copy()))
    return out


def contact_forces(scene: SceneConfig, position: ArrayLike, velocity: ArrayLike) -> ContactResult:
    p = np.asarray(position, dtype=np.float64)
    v = np.asarray(velocity, dtype=np.float64)
    force, moment, total = np.zeros(3), np.zeros(3), 0.0
    for pen in penetrations(scene, p, v):
        fn = normal_force(scene.stiffness, scene.damping, min(pen.depth, scene.contact_skin), pen.rate)
        f = fn * pen.normal + friction_force(scene.friction, fn, v, pen.normal)
        force += f
        moment += np.cross(pen.point - p, f)
        total += fn
    return ContactResult(force, moment, total)


def settle(scene: SceneConfig, position: NDArray[np.float64]) -> NDArray[np.float64]:
    """Position with every penetration deeper than the skin pushed back to it"""
    p = position
    for pen in penetrations(scene, position):
        if pen.depth > scene.contact_skin:
            p = p + (pen.depth - scene.contact_skin) * pen.normal
    return p


def sensor_offset_pose(scene: SceneConfig) -> Pose:
    return Pose.from_position([0.0, 0.0, scene.sensor_offset])


def contact_wrench(scene: SceneConfig, peg_pose: Pose, peg_velocity: ArrayLike) -> Wrench:
    """Contact wrench as the wrist sensor sees it (sensor axes, moment about the sensor origin)"""
    c = contact_forces(scene, peg_pose.position, peg_velocity)
    sensor = compose(peg_pose, sensor_offset_pose(scene))
    lever = sensor.position - peg_pose.position
    moment_world = c.moment - np.cross(lever, c.force)
    Rt = sensor.rotation.T
    return Wrench(Rt @ c.force, Rt @ moment_world, "sensor")
