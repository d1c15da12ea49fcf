"""Synthetic eye-in-hand camera: anti-aliased rectangles on a gray background."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import SceneConfig

GrayImage = NDArray[np.float64]

IMAGE_SIZE = 96
BACKGROUND = 0.2
SLOT_INTENSITY = 0.55
PEG_INTENSITY = 0.9
STUD_THICKNESS = 0.05
WALL_THICKNESS = 0.02


@dataclass(frozen=True, slots=True)
class Rect:
    """Axis-aligned rectangle in continuous pixel coordinates (u: column, v: row)"""

    u0: float
    v0: float
    u1: float
    v1: float
    intensity: float


def _coverage(lo: float, hi: float, n: int) -> NDArray[np.float64]:
    edges = np.arange(n, dtype=np.float64)
    return np.clip(np.minimum(hi, edges + 1.0) - np.maximum(lo, edges), 0.0, 1.0)


def rasterize(rects: Sequence[Rect], size: int = IMAGE_SIZE, background: float = BACKGROUND) -> GrayImage:
    img = np.full((size, size), background, dtype=np.float64)
    for r in rects:
        cov = np.outer(_coverage(r.v0, r.v1, size), _coverage(r.u0, r.u1, size))
        img = img * (1.0 - cov) + r.intensity * cov
    return img


class SceneProjector:
    """Affine side-view projection (x -> column, z -> row) of the insertion scene"""

    def __init__(self, scene: SceneConfig, size: int = IMAGE_SIZE):
        self.scene = scene
        self.size = size
        self._center = size / 2.0

    def to_pixels(self, x: float, z: float) -> tuple[float, float]:
        x_ref, z_ref = self.scene.camera_reference
        gain = self.scene.px_per_m
        return self._center + gain * (x - x_ref), self._center - gain * (z - z_ref)

    def _box(self, x0: float, x1: float, z0: float, z1: float, intensity: float) -> Rect:
        u0, v1 = self.to_pixels(x0, z0)
        u1, v0 = self.to_pixels(x1, z1)
        return Rect(u0, v0, u1, v1, intensity)

    def slot_rects(self) -> list[Rect]:
        s = self.scene
        top = s.floor_z + s.slot_depth
        return [
            self._box(s.slot_x_min, s.slot_x_max + WALL_THICKNESS, s.floor_z - STUD_THICKNESS, s.floor_z, SLOT_INTENSITY),
            self._box(s.slot_x_max, s.slot_x_max + WALL_THICKNESS, s.floor_z, top, SLOT_INTENSITY),
        ]

    def peg_rect(self, peg_position: ArrayLike) -> Rect:
        x, _, z = np.asarray(peg_position, dtype=np.float64)
        half = self.scene.peg_length_x / 2
        return self._box(x - half, x + half, z, z + self.scene.peg_height, PEG_INTENSITY)

    def render(self, peg_position: ArrayLike) -> GrayImage:
        rects = self.slot_rects() if self.scene.render_slot else []
        if self.scene.render_peg:
            rects.append(self.peg_rect(peg_position))
        return rasterize(rects, self.size)


def to_gray(rgb: ArrayLike) -> GrayImage:
    rgb = np.asarray(rgb, dtype=np.float64)
    return rgb @ np.array([0.299, 0.587, 0.114])
