from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from config import SceneConfig
from vision.hog import HogParams, hog_encode
from vision.raster import SceneProjector


class SceneEncoder:
    """Renders a camera frame (peg position snapshot) and HOG-encodes it.

    Frames are cached by position since held poses re-render the same image.
    """

    def __init__(self, scene: SceneConfig, params: HogParams = HogParams(), cache_size: int = 4096):
        self.projector = SceneProjector(scene, params.image_size)
        self.params = params
        self._encode = lru_cache(maxsize=cache_size)(self._render_and_encode)

    def _render_and_encode(self, key: tuple[float, float, float]) -> NDArray[np.float64]:
        feature = hog_encode(self.projector.render(key), self.params)
        feature.setflags(write=False)
        return feature

    def __call__(self, peg_position: ArrayLike) -> NDArray[np.float64]:
        key = tuple(float(v) for v in np.asarray(peg_position, dtype=np.float64).reshape(3))
        return self._encode(key).copy()
