"""Deterministic k-nearest-neighbour behaviour cloning over demonstrations."""

from collections.abc import Sequence
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import PolicyConfig
from config.errors import DataShapeError, EmptyInputError
from debug import Logger
from policy.actions import ActionChunk, compute_actions
from policy.base import BasePolicy
from policy.normalizer import NormalizerParams, denormalize, fit_normalizer, normalize
from sensing.io import demo_paths, read_demo
from sensing.schema import OBS_DIM, POSE_DIM, VISUAL_DIM, WRENCH_DIM, Observation

logger = Logger("Policy")

NORMALIZER_FILE = "normalizer.json"

_SCALE = np.concatenate(
    [
        np.full(POSE_DIM, np.sqrt(1.0 / POSE_DIM)),
        np.full(WRENCH_DIM, np.sqrt(1.0 / WRENCH_DIM)),
        np.full(VISUAL_DIM, np.sqrt(1.0 / VISUAL_DIM)),
    ]
)


def modality_scale(x_hat: ArrayLike) -> NDArray[np.float64]:
    """Weight each modality block by sqrt(1/d_m)"""
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x_hat.shape[-1] != OBS_DIM:
        raise DataShapeError(f"expected {OBS_DIM} observation dims, got {x_hat.shape[-1]}")
    return x_hat * _SCALE


class DemoDataset:
    """(observation, action chunk) pairs, rows ordered by (demo index, tick)"""

    def __init__(self, demos: Sequence[Sequence[Observation]], horizon: int):
        demos = [d for d in demos if len(d) > 0]
        if not demos:
            raise EmptyInputError("no demonstrations")
        self.horizon = horizon
        self.demos = [list(d) for d in demos]
        obs, acts, keys = [], [], []
        for d_idx, demo in enumerate(self.demos):
            poses = np.stack([o.pose9d for o in demo])
            for t, o in enumerate(demo):
                obs.append(o.vector())
                acts.append(compute_actions(poses, t, horizon).ravel())
                keys.append((d_idx, t))
        self.observations = np.stack(obs)
        self.actions = np.stack(acts)
        self.keys = keys
        self._policy: "KnnPolicy | None" = None

    def __len__(self) -> int:
        return len(self.keys)

    def chunk(self, row: int) -> ActionChunk:
        return self.actions[row].reshape(self.horizon, POSE_DIM)

    def policy(self, k: int, normalizer: NormalizerParams) -> "KnnPolicy":
        """Index over this dataset, rebuilt only when k or the normalizer changes"""
        cached = self._policy
        if cached is None or cached.k != k or cached.normalizer is not normalizer:
            self._policy = KnnPolicy(self, k, normalizer)
        return self._policy

    @classmethod
    def from_dir(cls, directory: Path, horizon: int) -> "DemoDataset":
        return cls([read_demo(p)[1] for p in demo_paths(directory)], horizon)


def knn_infer(obs: Observation, dataset: DemoDataset, k: int, normalizer: NormalizerParams) -> ActionChunk:
    return dataset.policy(k, normalizer).infer(obs)


class KnnPolicy(BasePolicy):
    def __init__(self, dataset: DemoDataset, k: int = 5, normalizer: NormalizerParams | None = None):
        if len(dataset) == 0:
            raise EmptyInputError("empty dataset")
        if not 1 <= k <= len(dataset):
            raise ValueError(f"k={k} must be within [1, {len(dataset)}]")
        self.dataset = dataset
        self.k = k
        self.horizon = dataset.horizon
        self.normalizer = normalizer or fit_normalizer(dataset.observations, dataset.actions)
        self._keys = modality_scale(normalize(dataset.observations, self.normalizer.observation))
        self._actions = normalize(dataset.actions, self.normalizer.action)

    @classmethod
    def from_config(cls, dataset: DemoDataset, cfg: PolicyConfig, normalizer: NormalizerParams | None = None) -> "KnnPolicy":
        if normalizer is None:
            normalizer = fit_normalizer(dataset.observations, dataset.actions, cfg.q_low, cfg.q_high)
        return cls(dataset, cfg.k, normalizer)

    @classmethod
    def load(cls, directory: str | Path, cfg: PolicyConfig) -> "KnnPolicy":
        directory = Path(directory)
        dataset = DemoDataset.from_dir(directory, cfg.horizon)
        sidecar = directory / NORMALIZER_FILE
        normalizer = NormalizerParams.load(sidecar) if sidecar.exists() else None
        logger.info(f"Loaded {len(dataset.demos)} demos ({len(dataset)} samples) from {directory}")
        return cls.from_config(dataset, cfg, normalizer)

    def neighbours(self, obs: Observation) -> NDArray[np.int64]:
        query = modality_scale(normalize(obs.vector(), self.normalizer.observation))
        dist = np.sum((self._keys - query) ** 2, axis=1)
        return np.argsort(dist, kind="stable")[: self.k]

    def infer(self, obs: Observation) -> ActionChunk:
        mean = self._actions[self.neighbours(obs)].mean(axis=0)
        return denormalize(mean, self.normalizer.action).reshape(self.horizon, POSE_DIM)
