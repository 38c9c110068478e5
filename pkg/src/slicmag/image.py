"""Pixel containers, color conversion and padding.

A *plane* is a 2-D ``uint8`` array indexed ``[y, x]``.  A :class:`RasterImage`
bundles one or three planes with a color-space tag.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "ColorSpace",
    "RasterImage",
    "as_plane",
    "round_half_away",
    "to_uint8",
    "rgb_to_ycbcr",
    "ycbcr_to_rgb",
    "pad_replicate",
]


class ColorSpace(enum.Enum):
    RGB = "rgb"
    YCBCR = "ycbcr"
    GRAY = "gray"

    @property
    def channels(self) -> int:
        return 1 if self is ColorSpace.GRAY else 3


def as_plane(arr) -> np.ndarray:
    """Validate and return ``arr`` as a 2-D uint8 plane (no copy if already one)."""
    a = np.asarray(arr)
    if a.ndim != 2:
        raise InvalidArgumentError(f"plane must be 2-D, got shape {a.shape}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise InvalidArgumentError(f"plane must be at least 1x1, got shape {a.shape}")
    if a.dtype != np.uint8:
        if not np.issubdtype(a.dtype, np.integer):
            raise InvalidArgumentError(f"plane samples must be integers, got {a.dtype}")
        if a.min() < 0 or a.max() > 255:
            raise InvalidArgumentError("plane samples must lie in [0, 255]")
        a = a.astype(np.uint8)
    return a


def round_half_away(x) -> np.ndarray:
    """Round to nearest integer, ties away from zero (``np.round`` rounds ties to even)."""
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + 0.5), x)


def to_uint8(x) -> np.ndarray:
    """Round half away from zero, clamp to [0, 255] and cast."""
    return np.clip(round_half_away(x), 0, 255).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class RasterImage:
    """An 8-bit image with one (Gray) or three (RGB, YCbCr) planes.

    ``data`` has shape ``(height, width, channels)`` and is made read-only on
    construction, so instances can be shared freely.
    """

    data: np.ndarray
    space: ColorSpace = ColorSpace.RGB

    def __post_init__(self):
        space = ColorSpace(self.space)
        a = np.asarray(self.data)
        if a.ndim == 2:
            a = a[:, :, None]
        if a.ndim != 3:
            raise InvalidArgumentError(f"image data must be (h, w, c), got shape {a.shape}")
        if a.shape[2] != space.channels:
            raise InvalidArgumentError(
                f"{space.name} image needs {space.channels} plane(s), got {a.shape[2]}"
            )
        a = np.array(a, dtype=np.uint8) if a.dtype != np.uint8 else a.copy()
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise InvalidArgumentError("image must be at least 1x1")
        a.setflags(write=False)
        object.__setattr__(self, "data", a)
        object.__setattr__(self, "space", space)

    @classmethod
    def from_planes(cls, planes, space: ColorSpace) -> "RasterImage":
        planes = [as_plane(p) for p in planes]
        shapes = {p.shape for p in planes}
        if len(shapes) != 1:
            raise InvalidArgumentError(f"planes differ in size: {sorted(shapes)}")
        return cls(np.stack(planes, axis=-1), space)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def size(self) -> tuple[int, int]:
        """``(width, height)``."""
        return self.width, self.height

    @property
    def planes(self) -> list[np.ndarray]:
        return [self.data[:, :, c] for c in range(self.data.shape[2])]

    def __eq__(self, other):
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self.space is other.space and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"RasterImage({self.width}x{self.height}, {self.space.name})"


# Full-range BT.601 (JPEG/JFIF convention).
_RGB2YCC = np.array(
    [
        [0.299, 0.587, 0.114],
        [-0.168736, -0.331264, 0.5],
        [0.5, -0.418688, -0.081312],
    ]
)
_YCC2RGB = np.array(
    [
        [1.0, 0.0, 1.402],
        [1.0, -0.344136, -0.714136],
        [1.0, 1.772, 0.0],
    ]
)
_CHROMA_OFFSET = np.array([0.0, 128.0, 128.0])


def _require(img: RasterImage, space: ColorSpace) -> None:
    if not isinstance(img, RasterImage):
        raise InvalidArgumentError(f"expected RasterImage, got {type(img).__name__}")
    if img.space is not space:
        raise InvalidArgumentError(f"expected a {space.name} image, got {img.space.name}")


def rgb_to_ycbcr(img: RasterImage) -> RasterImage:
    _require(img, ColorSpace.RGB)
    ycc = img.data.astype(np.float64) @ _RGB2YCC.T + _CHROMA_OFFSET
    return RasterImage(to_uint8(ycc), ColorSpace.YCBCR)


def ycbcr_to_rgb(img: RasterImage) -> RasterImage:
    _require(img, ColorSpace.YCBCR)
    rgb = (img.data.astype(np.float64) - _CHROMA_OFFSET) @ _YCC2RGB.T
    return RasterImage(to_uint8(rgb), ColorSpace.RGB)


def pad_replicate(plane, margin: int) -> np.ndarray:
    """Grow ``plane`` by ``margin`` pixels on every side, repeating edge samples."""
    p = as_plane(plane)
    if margin < 0:
        raise InvalidArgumentError(f"margin must be >= 0, got {margin}")
    if margin == 0:
        return p.copy()
    return np.pad(p, margin, mode="edge")
