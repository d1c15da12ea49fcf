from policy.actions import ActionChunk, compute_actions, decode_action
from policy.base import BasePolicy
from policy.knn import NORMALIZER_FILE, DemoDataset, KnnPolicy, knn_infer, modality_scale
from policy.normalizer import (
    NormalizerParams,
    QuantileBounds,
    denormalize,
    fit_normalizer,
    fit_quantiles,
    normalize,
)

__all__ = [
    "NORMALIZER_FILE",
    "ActionChunk",
    "BasePolicy",
    "DemoDataset",
    "KnnPolicy",
    "NormalizerParams",
    "QuantileBounds",
    "compute_actions",
    "decode_action",
    "denormalize",
    "fit_normalizer",
    "fit_quantiles",
    "knn_infer",
    "modality_scale",
    "normalize",
]
