"""Nearest, bilinear and bicubic resizing of planes and images.

All three methods share one coordinate convention: pixel centers are aligned,
so output sample ``x_out`` reads source coordinate
``(x_out + 0.5) * w_in / w_out - 0.5``.  Taps falling outside the source are
clamped to the nearest edge sample.

Resizing is separable.  Each axis is expressed as a dense ``(n_out, n_in)``
weight matrix, so a plane is resized with two matrix products.
"""
from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError
from .image import RasterImage, as_plane, to_uint8

__all__ = ["InterpMethod", "axis_weights", "cubic_kernel", "resize_plane", "resize_image"]

KEYS_A = -0.5


class InterpMethod(enum.Enum):
    NEAREST = "nearest"
    BILINEAR = "bilinear"
    BICUBIC = "bicubic"

    @classmethod
    def parse(cls, value) -> "InterpMethod":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise InvalidArgumentError(f"unknown interpolation {value!r} (expected {names})") from None


def cubic_kernel(t, a: float = KEYS_A) -> np.ndarray:
    """Keys cubic convolution kernel; support is ``|t| < 2``."""
    t = np.abs(np.asarray(t, dtype=np.float64))
    t2, t3 = t * t, t * t * t
    near = (a + 2.0) * t3 - (a + 3.0) * t2 + 1.0
    far = a * t3 - 5.0 * a * t2 + 8.0 * a * t - 4.0 * a
    return np.where(t <= 1.0, near, np.where(t < 2.0, far, 0.0))


def source_coords(n_in: int, n_out: int) -> np.ndarray:
    return (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5


@lru_cache(maxsize=64)
def axis_weights(n_in: int, n_out: int, method: InterpMethod) -> np.ndarray:
    """Weight matrix mapping ``n_in`` source samples to ``n_out`` output samples."""
    src = source_coords(n_in, n_out)
    rows = np.arange(n_out)
    w = np.zeros((n_out, n_in))
    if method is InterpMethod.NEAREST:
        idx = np.clip(np.floor(src + 0.5).astype(np.intp), 0, n_in - 1)
        w[rows, idx] = 1.0
    elif method is InterpMethod.BILINEAR:
        x0 = np.floor(src)
        frac = src - x0
        x0 = x0.astype(np.intp)
        for tap, weight in ((x0, 1.0 - frac), (x0 + 1, frac)):
            np.add.at(w, (rows, np.clip(tap, 0, n_in - 1)), weight)
    elif method is InterpMethod.BICUBIC:
        x0 = np.floor(src).astype(np.intp)
        for k in range(-1, 3):
            tap = x0 + k
            np.add.at(w, (rows, np.clip(tap, 0, n_in - 1)), cubic_kernel(src - tap))
    else:
        raise InvalidArgumentError(f"unknown interpolation method {method!r}")
    w.setflags(write=False)
    return w


def resize_plane(plane, out_w: int, out_h: int, method=InterpMethod.BICUBIC) -> np.ndarray:
    """Resize one plane to ``out_w`` x ``out_h``; results are rounded and clamped to 8 bits."""
    p = as_plane(plane)
    method = InterpMethod.parse(method)
    out_w, out_h = int(out_w), int(out_h)
    if out_w < 1 or out_h < 1:
        raise InvalidArgumentError(f"output size must be at least 1x1, got {out_w}x{out_h}")
    h, w = p.shape
    if method is InterpMethod.NEAREST:
        ys = np.clip(np.floor(source_coords(h, out_h) + 0.5).astype(np.intp), 0, h - 1)
        xs = np.clip(np.floor(source_coords(w, out_w) + 0.5).astype(np.intp), 0, w - 1)
        return p[np.ix_(ys, xs)]
    wy = axis_weights(h, out_h, method)
    wx = axis_weights(w, out_w, method)
    return to_uint8(wy @ p.astype(np.float64) @ wx.T)


def resize_image(img: RasterImage, out_w: int, out_h: int, method=InterpMethod.BICUBIC) -> RasterImage:
    planes = [resize_plane(p, out_w, out_h, method) for p in img.planes]
    return RasterImage.from_planes(planes, img.space)
