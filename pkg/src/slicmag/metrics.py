"""MSE / PSNR between two 8-bit images."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .image import ColorSpace, RasterImage, rgb_to_ycbcr

__all__ = ["QualityReport", "psnr", "psnr_from_mse", "PSNR_CHANNELS"]

PSNR_CHANNELS = ("rgb", "y")


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical
    width: int
    height: int


def psnr_from_mse(mse: float, peak: float = 255.0) -> float:
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def psnr(a: RasterImage, b: RasterImage, channel: str = "rgb", crop_border: int = 0) -> QualityReport:
    """Compare two images of equal size and color space.

    ``channel="rgb"`` averages the squared error over every sample of every
    plane; ``channel="y"`` compares full-range BT.601 luma only (RGB inputs).
    ``crop_border`` drops that many pixels on each side before comparing.
    """
    if not isinstance(a, RasterImage) or not isinstance(b, RasterImage):
        raise InvalidArgumentError("psnr expects two RasterImage values")
    if a.size != b.size:
        raise InvalidArgumentError(f"size mismatch: {a.width}x{a.height} vs {b.width}x{b.height}")
    if a.space is not b.space:
        raise InvalidArgumentError(f"color space mismatch: {a.space.name} vs {b.space.name}")
    if channel not in PSNR_CHANNELS:
        raise InvalidArgumentError(f"channel must be one of {PSNR_CHANNELS}, got {channel!r}")
    if crop_border < 0 or 2 * crop_border >= min(a.width, a.height):
        raise InvalidArgumentError(f"crop_border {crop_border} leaves nothing to compare")

    if channel == "y":
        if a.space is ColorSpace.RGB:
            a, b = rgb_to_ycbcr(a), rgb_to_ycbcr(b)
        elif a.space is ColorSpace.GRAY:
            raise InvalidArgumentError("Y-channel PSNR needs RGB or YCbCr images")
        x, y = a.data[..., :1], b.data[..., :1]
    else:
        x, y = a.data, b.data
    if crop_border:
        c = crop_border
        x, y = x[c:-c, c:-c], y[c:-c, c:-c]
    diff = x.astype(np.float64) - y.astype(np.float64)
    mse = float(np.mean(diff * diff))
    return QualityReport(mse, psnr_from_mse(mse), x.shape[1], x.shape[0])
