"""Fixed HOG encoder: 6 unsigned orientation bins, 16x16 px cells,
2x2-cell blocks with L2-Hys normalization -> 600 features on 96x96 input.

Votes are split linearly between the two nearest orientation bins (bin
centers at 0, 30, ..., 150 degrees); there is no spatial interpolation.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from config.errors import DataShapeError
from vision.raster import GrayImage


@dataclass(frozen=True, slots=True)
class HogParams:
    orientations: int = 6
    cell: int = 16
    block: int = 2
    clip: float = 0.2
    image_size: int = 96

    @property
    def cells_per_side(self) -> int:
        return self.image_size // self.cell

    @property
    def blocks_per_side(self) -> int:
        return self.cells_per_side - self.block + 1

    @property
    def feature_length(self) -> int:
        return self.blocks_per_side**2 * self.block**2 * self.orientations


def gradients(img: GrayImage) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Centered differences with edge replication"""
    p = np.pad(img, 1, mode="edge")
    gx = p[1:-1, 2:] - p[1:-1, :-2]
    gy = p[2:, 1:-1] - p[:-2, 1:-1]
    return gx, gy


def cell_histograms(img: GrayImage, p: HogParams = HogParams()) -> NDArray[np.float64]:
    """Per-cell orientation histograms, shape (cells, cells, orientations)"""
    img = np.asarray(img, dtype=np.float64)
    if img.shape != (p.image_size, p.image_size):
        raise DataShapeError(f"HOG expects {p.image_size}x{p.image_size} input, got {img.shape}")
    gx, gy = gradients(img)
    mag = np.hypot(gx, gy)
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)

    pos = angle / (180.0 / p.orientations)
    base = np.floor(pos)
    w_hi = pos - base
    lo = base.astype(np.int64) % p.orientations
    hi = (lo + 1) % p.orientations

    n = p.cells_per_side
    rows, cols = np.indices(img.shape)
    cell = (rows // p.cell) * n + cols // p.cell
    size = n * n * p.orientations
    hist = np.bincount((cell * p.orientations + lo).ravel(), (mag * (1.0 - w_hi)).ravel(), size)
    hist += np.bincount((cell * p.orientations + hi).ravel(), (mag * w_hi).ravel(), size)
    return hist.reshape(n, n, p.orientations)


def l2_hys(v: NDArray[np.float64], clip: float) -> NDArray[np.float64]:
    norm = np.linalg.norm(v)
    if norm == 0:
        return v
    v = np.minimum(v / norm, clip)
    return v / np.linalg.norm(v)


def hog_encode(img: GrayImage, p: HogParams = HogParams()) -> NDArray[np.float64]:
    hist = cell_histograms(img, p)
    blocks = []
    for by in range(p.blocks_per_side):
        for bx in range(p.blocks_per_side):
            block = hist[by : by + p.block, bx : bx + p.block, :].ravel()
            blocks.append(l2_hys(block, p.clip))
    return np.concatenate(blocks)
