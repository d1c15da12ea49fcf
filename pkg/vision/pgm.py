"""Binary PGM (P5) import/export for golden-image fixtures."""

import re
from pathlib import Path

import numpy as np

from config.errors import DataShapeError
from vision.raster import GrayImage

_HEADER = re.compile(rb"^P5\s+(?:#[^\n]*\s+)*(\d+)\s+(?:#[^\n]*\s+)*(\d+)\s+(?:#[^\n]*\s+)*(\d+)\s")


def write_pgm(path: Path, img: GrayImage, maxval: int = 255) -> Path:
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise DataShapeError(f"PGM export expects a 2D image, got shape {img.shape}")
    dtype = ">u2" if maxval > 255 else "u1"
    pixels = np.rint(np.clip(img, 0.0, 1.0) * maxval).astype(dtype)
    h, w = img.shape
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(f"P5\n{w} {h}\n{maxval}\n".encode("ascii") + pixels.tobytes())
    return path


def read_pgm(path: Path) -> GrayImage:
    data = Path(path).read_bytes()
    match = _HEADER.match(data)
    if match is None:
        raise DataShapeError(f"{path} is not a binary PGM file")
    w, h, maxval = (int(g) for g in match.groups())
    dtype = ">u2" if maxval > 255 else "u1"
    pixels = np.frombuffer(data, dtype=dtype, count=w * h, offset=match.end())
    return pixels.reshape(h, w).astype(np.float64) / maxval
