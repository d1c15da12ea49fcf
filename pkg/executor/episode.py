"""Closed-loop rollout, on the virtual clock unless a pacing clock is given."""

import numpy as np

from config import ExperimentConfig, is_debug
from debug import Logger
from executor.schema import RolloutHeader, RolloutLog, RolloutRecord
from executor.strategies import StrategyManager
from geometry import pose_to_9d
from policy import BasePolicy
from sensing import ObservationAssembler
from simworld import InsertionWorld, contact_wrench
from timebase import Clock, Duration, Timestamp, VirtualClock
from vision import SceneEncoder

logger = Logger("Episode")


class CompletionTracker:
    """First time the normalized goal distance drops below `fraction` and stays there for `hold` seconds"""

    def __init__(self, start: np.ndarray, goal: np.ndarray, fraction: float, hold: Duration):
        self.goal = goal
        self.scale = float(np.linalg.norm(start - goal))
        self.fraction = fraction
        self.hold = hold
        self.entered: Timestamp | None = None

    def update(self, t: Timestamp, position: np.ndarray) -> Timestamp | None:
        if np.linalg.norm(position - self.goal) / self.scale < self.fraction:
            if self.entered is None:
                self.entered = t
            if t - self.entered >= self.hold - 1e-9:
                return self.entered
        else:
            self.entered = None
        return None


def run_episode(
    strategy: str,
    policy: BasePolicy,
    world: InsertionWorld,
    inference_latency: Duration,
    cfg: ExperimentConfig,
    delta: Duration | None = None,
    horizon: Duration | None = None,
    encoder: SceneEncoder | None = None,
    clock: Clock | None = None,
) -> RolloutLog:
    """Drive world and executor at the command period until completion or horizon.

    Each cycle at time t: the world publishes its sensor samples, the
    executor consumes what has arrived and emits the setpoint for
    t + command_period, and the plant integrates up to that time. Cycle
    times stay on the command grid; a `WallClock` only paces the loop.
    """
    exe = cfg.executor
    period = exe.command_period
    horizon = exe.horizon if horizon is None else horizon
    assembler = ObservationAssembler(world.estimated_mass(), world.sensor_offset, encoder or SceneEncoder(cfg.scene))
    executor = StrategyManager().get(strategy)(policy, exe, assembler, inference_latency, world.start, delta)

    goal = np.asarray(cfg.scene.goal_position, dtype=np.float64)
    tracker = CompletionTracker(world.start.position, goal, cfg.metrics.completion_fraction, cfg.metrics.completion_hold)
    header = RolloutHeader(
        strategy=strategy,
        inference_latency_ms=round(inference_latency * 1000.0, 6),
        seed=world.seed,
        delta=executor.delta,
        command_period=period,
        start_position=tuple(world.start.position.tolist()),
        goal_position=tuple(goal.tolist()),
    )
    log = RolloutLog(header=header)
    clock = clock or VirtualClock(world.now)
    t0 = world.now
    k = 0
    while True:
        t = t0 + k * period
        command_ts = t0 + (k + 1) * period
        world.publish()
        delivery = world.deliver(t)
        assembler.push_poses(delivery.pose)
        assembler.push_wrenches(delivery.wrench)
        assembler.push_frames(delivery.visual)

        outcome = executor.step(t, command_ts)
        pose = outcome.selection.pose
        world.plant.command(pose, command_ts, t)
        state = world.plant.advance(command_ts)
        clock.advance_to(command_ts)
        k += 1

        wrench = contact_wrench(cfg.scene, state.pose, state.velocity)
        log.records.append(
            RolloutRecord(
                t=t,
                command_ts=command_ts,
                commanded_pose=pose_to_9d(pose).tolist(),
                feedback_pose=pose_to_9d(state.pose).tolist(),
                wrench_ext=wrench.vector().tolist(),
                buffer_state=executor.buffer.state(),
                target_ts=outcome.selection.target_ts,
                selected_ts=outcome.selection.selected_ts,
                events=outcome.events,
            )
        )
        if (done := tracker.update(command_ts, state.position)) is not None:
            log.header.completion_time = done
            break
        if command_ts - t0 >= horizon - 1e-9:
            log.header.timeout = True
            logger.warning(f"{strategy} @ {header.inference_latency_ms:.0f} ms seed {world.seed}: horizon {horizon:.0f}s reached")
            break
    if is_debug():
        logger.debug(f"{strategy} seed {world.seed}: {len(log.records)} cycles, completion {log.header.completion_time}")
    return log
