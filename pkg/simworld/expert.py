"""Scripted demonstrator for the slot insertion.

Phases: approach above the slot entry, fast then slow descent into the
channel, press until the wrist force crosses a threshold, slide along the
slot to the end wall. The setpoint moves toward each waypoint with an
acceleration-limited speed profile.
"""

from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import ExpertConfig, SceneConfig
from config.errors import ExpertFailureError
from debug import Logger
from geometry import Pose

logger = Logger("Expert")

DESCENT_CLEARANCE = 0.01


class Phase(str, Enum):
    APPROACH = "approach"
    DESCEND_FAST = "descend_fast"
    DESCEND_SLOW = "descend_slow"
    PRESS = "press"
    SLIDE = "slide"
    DONE = "done"


class ScriptedExpert:
    def __init__(self, cfg: ExpertConfig, scene: SceneConfig, start: Pose, rng: np.random.Generator, seed: int = 0):
        self.cfg = cfg
        self.scene = scene
        self.seed = seed
        self.rotation = start.rotation.copy()
        self.setpoint = start.position.copy()
        self.speed = 0.0
        self.phase = Phase.APPROACH
        self.elapsed = 0.0

        j = cfg.jitter
        entry_x = scene.slot_x_min + cfg.entry_offset + j * rng.uniform(-0.005, 0.005)
        entry_y = scene.slot_center_y + j * rng.uniform(-0.0003, 0.0003)
        above_z = scene.floor_z + cfg.approach_height + j * rng.uniform(-0.005, 0.005)
        press_z = scene.floor_z - cfg.press_depth
        goal_x = scene.goal_position[0]
        self.waypoints: dict[Phase, NDArray[np.float64]] = {
            Phase.APPROACH: np.array([entry_x, entry_y, above_z]),
            Phase.DESCEND_FAST: np.array([entry_x, entry_y, scene.floor_z + DESCENT_CLEARANCE]),
            Phase.DESCEND_SLOW: np.array([entry_x, entry_y, press_z]),
            Phase.SLIDE: np.array([goal_x, entry_y, press_z]),
        }
        speeds = 1.0 + j * rng.uniform(-0.1, 0.1, size=4)
        self.speeds = {
            Phase.APPROACH: cfg.approach_speed * speeds[0],
            Phase.DESCEND_FAST: cfg.descend_speed * speeds[1],
            Phase.DESCEND_SLOW: cfg.contact_speed * speeds[2],
            Phase.SLIDE: cfg.slide_speed * speeds[3],
        }

    @property
    def done(self) -> bool:
        return self.phase is Phase.DONE

    def _move_toward(self, target: NDArray[np.float64], v_max: float, dt: float) -> bool:
        delta = target - self.setpoint
        dist = float(np.linalg.norm(delta))
        if dist <= 1e-12:
            self.speed = 0.0
            return True
        a = self.cfg.acceleration
        self.speed = min(v_max, self.speed + a * dt, float(np.sqrt(2 * a * dist)))
        step = self.speed * dt
        if step >= dist:
            self.setpoint = target.copy()
            self.speed = 0.0
            return True
        self.setpoint = self.setpoint + delta * (step / dist)
        return False

    def _advance(self, phase: Phase) -> None:
        logger.debug(f"seed {self.seed}: {self.phase.value} -> {phase.value} at {self.elapsed:.2f}s")
        self.phase = phase

    def expert_step(self, feedback: ArrayLike, force: ArrayLike, dt: float) -> Pose:
        """Next setpoint given feedback TCP position and the compensated wrist force"""
        self.elapsed += dt
        if self.elapsed > self.cfg.timeout and not self.done:
            raise ExpertFailureError(self.seed, f"goal not reached within {self.cfg.timeout:.0f}s (phase {self.phase.value})")
        pressing = float(np.linalg.norm(force)) > self.cfg.force_threshold
        match self.phase:
            case Phase.APPROACH | Phase.DESCEND_FAST:
                if self._move_toward(self.waypoints[self.phase], self.speeds[self.phase], dt):
                    self._advance(Phase.DESCEND_FAST if self.phase is Phase.APPROACH else Phase.DESCEND_SLOW)
            case Phase.DESCEND_SLOW:
                reached = self._move_toward(self.waypoints[self.phase], self.speeds[self.phase], dt)
                if pressing:
                    self.speed = 0.0
                    self._advance(Phase.SLIDE)
                elif reached:
                    self._advance(Phase.PRESS)
            case Phase.PRESS:
                if pressing:
                    self._advance(Phase.SLIDE)
            case Phase.SLIDE | Phase.DONE:
                self._move_toward(self.waypoints[Phase.SLIDE], self.speeds[Phase.SLIDE], dt)
                goal = np.asarray(self.scene.goal_position)
                near = np.linalg.norm(np.asarray(feedback, dtype=np.float64)[:2] - goal[:2]) < self.cfg.goal_tolerance
                if self.phase is Phase.SLIDE and near:
                    self._advance(Phase.DONE)
        return Pose(self.setpoint.copy(), self.rotation)
