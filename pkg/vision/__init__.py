from vision.encoder import SceneEncoder
from vision.hog import HogParams, cell_histograms, gradients, hog_encode, l2_hys
from vision.pgm import read_pgm, write_pgm
from vision.raster import GrayImage, Rect, SceneProjector, rasterize, to_gray

__all__ = [
    "GrayImage",
    "HogParams",
    "Rect",
    "SceneEncoder",
    "SceneProjector",
    "cell_histograms",
    "gradients",
    "hog_encode",
    "l2_hys",
    "rasterize",
    "read_pgm",
    "to_gray",
    "write_pgm",
]
