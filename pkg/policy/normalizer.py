"""Per-dimension quantile normalization to [-1, 1]."""

from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, model_validator

from config.errors import DataShapeError, EmptyInputError


class QuantileBounds(BaseModel):
    """Per-dimension (q_l, q_u); held fixed once fitted"""

    low: list[float]
    high: list[float]

    @model_validator(mode="after")
    def _check(self) -> "QuantileBounds":
        if len(self.low) != len(self.high):
            raise ValueError("low and high must have the same length")
        if any(h < lo for lo, h in zip(self.low, self.high)):
            raise ValueError("q_u must be >= q_l in every dimension")
        return self

    @property
    def dim(self) -> int:
        return len(self.low)

    def arrays(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.asarray(self.low, dtype=np.float64), np.asarray(self.high, dtype=np.float64)


class NormalizerParams(BaseModel):
    q_low_level: float
    q_high_level: float
    observation: QuantileBounds
    action: QuantileBounds

    def save(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=1), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Path) -> "NormalizerParams":
        return cls.model_validate_json(path.read_text(encoding="utf-8"))


def fit_quantiles(data: ArrayLike, q_low_level: float, q_high_level: float) -> QuantileBounds:
    data = np.asarray(data, dtype=np.float64)
    if data.size == 0:
        raise EmptyInputError("cannot fit a normalizer on an empty dataset")
    if data.ndim != 2 or data.shape[0] < 2:
        raise DataShapeError(f"need a (samples >= 2, dims) matrix, got shape {data.shape}")
    low, high = np.quantile(data, [q_low_level, q_high_level], axis=0, method="linear")
    return QuantileBounds(low=low.tolist(), high=high.tolist())


def fit_normalizer(
    observations: ArrayLike, actions: ArrayLike, q_low_level: float = 0.01, q_high_level: float = 0.99
) -> NormalizerParams:
    return NormalizerParams(
        q_low_level=q_low_level,
        q_high_level=q_high_level,
        observation=fit_quantiles(observations, q_low_level, q_high_level),
        action=fit_quantiles(actions, q_low_level, q_high_level),
    )


def normalize(x: ArrayLike, bounds: QuantileBounds) -> NDArray[np.float64]:
    """x_hat = 2 (x - q_l) / (q_u - q_l) - 1; degenerate dimensions map to 0. No clipping."""
    low, high = bounds.arrays()
    x = np.asarray(x, dtype=np.float64)
    span = high - low
    live = span > 0
    out = np.zeros(np.broadcast(x, span).shape)
    np.divide(2.0 * (x - low), span, out=out, where=live)
    return np.where(live, out - 1.0, 0.0)


def denormalize(x_hat: ArrayLike, bounds: QuantileBounds) -> NDArray[np.float64]:
    low, high = bounds.arrays()
    x_hat = np.asarray(x_hat, dtype=np.float64)
    span = high - low
    return np.where(span > 0, (x_hat + 1.0) / 2.0 * span + low, low)
