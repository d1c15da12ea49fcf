"""Robot plant: pure command delay followed by a first-order position lag.

Commands are setpoint knots stamped with the time they are meant to be
reached. The plant reads the knot history, linearly interpolated, at
`u - delay` and tracks it through an exactly integrated first-order lag,
so a constant-velocity ramp is followed with a total shift of
`delay + tau_r`. Contact enters as an admittance term F / b, and a
position that reaches the rigid core of a solid is moved back onto its skin.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from config import PlantConfig, SceneConfig
from geometry import Pose
from simworld.contact import ContactResult, contact_forces, settle
from timebase import DelayedChannel, Duration, Timestamp

_POLL_EPS = 1e-9


@dataclass(frozen=True, eq=False, slots=True)
class PlantState:
    t: Timestamp
    position: NDArray[np.float64]
    velocity: NDArray[np.float64]
    rotation: NDArray[np.float64] = field(default_factory=lambda: np.eye(3))
    contact: ContactResult = field(default_factory=ContactResult.none)

    @property
    def pose(self) -> Pose:
        return Pose(self.position, self.rotation)


@dataclass(frozen=True, eq=False, slots=True)
class _Knot:
    ts: Timestamp
    position: NDArray[np.float64]
    rotation: NDArray[np.float64]


def lag_step(x0: float | NDArray, s0: float | NDArray, s1: float | NDArray, bias: float | NDArray, h: float, tau: float):
    """Exact solution of x' = (s - x) / tau + bias / tau over a step where s ramps s0 -> s1"""
    if tau == 0.0:
        return s1 + bias
    r = (s1 - s0) / h
    decay = math.exp(-h / tau)
    return s1 + bias - r * tau + (x0 - s0 - bias + r * tau) * decay


class SimulatedPlant:
    def __init__(self, cfg: PlantConfig, scene: SceneConfig, start: Pose, command_period: Duration, t0: Timestamp = 0.0):
        self.cfg = cfg
        self.scene = scene
        self.command_period = command_period
        self.state = PlantState(t0, start.position.copy(), np.zeros(3), start.rotation.copy())
        self._inbox: DelayedChannel[_Knot] = DelayedChannel(max(cfg.delay - command_period, 0.0), "plant-commands")
        self._knots: list[_Knot] = [_Knot(t0, start.position.copy(), start.rotation.copy())]

    def command(self, target: Pose, command_ts: Timestamp, now: Timestamp) -> None:
        self._inbox.send(_Knot(command_ts, target.position.copy(), target.rotation.copy()), now)

    def setpoint(self, u: Timestamp) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Delayed setpoint at plant time u"""
        s = u - self.cfg.delay
        knots = self._knots
        i = len(knots) - 1
        while i > 0 and knots[i].ts > s:
            i -= 1
        k0 = knots[i]
        if i == len(knots) - 1 or s <= k0.ts:
            return k0.position, k0.rotation
        k1 = knots[i + 1]
        w = (s - k0.ts) / (k1.ts - k0.ts)
        return k0.position + w * (k1.position - k0.position), k0.rotation

    def _prune(self, before: Timestamp) -> None:
        # keep one knot at or before the oldest time still needed
        s = before - self.cfg.delay
        while len(self._knots) > 2 and self._knots[1].ts <= s:
            self._knots.pop(0)

    def advance(self, t_end: Timestamp) -> PlantState:
        """Integrate from the current plant time to t_end in fixed substeps"""
        for knot in self._inbox.poll(self.state.t + _POLL_EPS):
            self._knots.append(knot)
        t0 = self.state.t
        span = t_end - t0
        n = self.cfg.substeps
        tau, b = self.cfg.tau_r, self.cfg.admittance_damping
        st = self.state
        for j in range(1, n + 1):
            u0, u1 = st.t, (t_end if j == n else t0 + span * (j / n))
            h = u1 - u0
            contact = contact_forces(self.scene, st.position, st.velocity)
            s0, _ = self.setpoint(u0)
            s1, rot = self.setpoint(u1)
            x1 = settle(self.scene, lag_step(st.position, s0, s1, tau * contact.force / b, h, tau))
            st = PlantState(u1, x1, (x1 - st.position) / h, rot, contact)
        self.state = replace(st, contact=contact_forces(self.scene, st.position, st.velocity))
        self._prune(t0)
        return self.state

    def plant_step(self, commanded: Pose | None, dt: Duration) -> PlantState:
        """One control cycle: optional new setpoint for t + dt, then integrate over (t, t + dt]"""
        now = self.state.t
        if commanded is not None:
            self.command(commanded, now + dt, now)
        return self.advance(now + dt)
