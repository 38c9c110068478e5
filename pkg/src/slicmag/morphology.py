"""Grayscale dilation and the masked (conditional) dilation used to grow segments."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .image import as_plane

__all__ = ["StructuringElement", "as_mask", "dilate", "conditional_dilate"]


@dataclass(frozen=True, eq=False)
class StructuringElement:
    """Odd-sized window with an additive profile; the origin is the center cell.

    ``offsets[t + oy, s + ox]`` holds ``B(s, t)`` for displacements
    ``s in [-ox, ox]`` (columns) and ``t in [-oy, oy]`` (rows).
    """

    offsets: np.ndarray

    def __post_init__(self):
        b = np.array(self.offsets, dtype=np.int64)
        if b.ndim != 2 or b.shape[0] % 2 == 0 or b.shape[1] % 2 == 0:
            raise InvalidArgumentError(f"structuring element must be 2-D with odd sides, got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "offsets", b)

    @classmethod
    def flat(cls, width: int = 5, height: int | None = None) -> "StructuringElement":
        height = width if height is None else height
        return cls(np.zeros((height, width), dtype=np.int64))

    @property
    def width(self) -> int:
        return self.offsets.shape[1]

    @property
    def height(self) -> int:
        return self.offsets.shape[0]

    @property
    def origin(self) -> tuple[int, int]:
        """``(x, y)`` of the center cell."""
        return (self.width - 1) // 2, (self.height - 1) // 2

    @property
    def is_flat(self) -> bool:
        return not self.offsets.any()


def as_mask(region) -> np.ndarray:
    m = np.asarray(region)
    if m.ndim != 2:
        raise InvalidArgumentError(f"mask must be 2-D, got shape {m.shape}")
    return m.astype(bool, copy=False)


def dilate(plane, se: StructuringElement) -> np.ndarray:
    """``out(x, y) = max_{(s,t)} f(x - s, y - t) + B(s, t)``, edge-clamped, clamped to [0, 255]."""
    f = as_plane(plane)
    ox, oy = se.origin
    h, w = f.shape
    padded = np.pad(f.astype(np.int64), ((oy, oy), (ox, ox)), mode="edge")
    out = np.full((h, w), np.iinfo(np.int64).min, dtype=np.int64)
    for t in range(-oy, oy + 1):
        for s in range(-ox, ox + 1):
            # f(x - s, y - t) sits at padded[y - t + oy, x - s + ox]
            shifted = padded[oy - t : oy - t + h, ox - s : ox - s + w]
            np.maximum(out, shifted + se.offsets[t + oy, s + ox], out=out)
    return np.clip(out, 0, 255).astype(np.uint8)


def conditional_dilate(channel_mask, region, window: StructuringElement | None = None) -> np.ndarray:
    """Fill the background of ``region`` with the window maximum of ``channel_mask``.

    Pixels where ``region`` is true keep their value; every other pixel takes the
    maximum of ``channel_mask`` over the window centered on it.
    """
    b = as_plane(channel_mask)
    a = as_mask(region)
    window = StructuringElement.flat(5) if window is None else window
    if a.shape != b.shape:
        raise InvalidArgumentError(f"mask shape {a.shape} does not match channel shape {b.shape}")
    if not window.is_flat:
        raise InvalidArgumentError("conditional dilation needs a flat window")
    return np.where(a, b, dilate(b, window))
