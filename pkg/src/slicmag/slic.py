"""SLIC superpixels: windowed k-means over (L, a, b, x, y).

Cluster centers start on a regular grid with step ``S = sqrt(N / k)`` and are
nudged to the lowest-gradient pixel of their 3x3 neighborhood.  Each iteration
assigns every pixel to the closest center whose ``2S x 2S`` window covers it,
using ``D^2 = d_lab^2 + (d_xy / S)^2 * m^2``, then moves each center to the mean
of its members.  An optional post-pass merges small disconnected fragments into
a neighboring segment so every label ends up 4-connected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import InvalidArgumentError
from .image import ColorSpace, RasterImage

__all__ = [
    "SlicParams",
    "LabelMap",
    "rgb_to_lab",
    "slic_segment",
    "segment_count",
    "boundary_mask",
    "boundary_overlay",
    "label_map_to_image",
    "BOUNDARY_COLOR",
]

BOUNDARY_COLOR = (255, 255, 0)

_FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True)
class SlicParams:
    k: int = 100
    compactness: float = 10.0
    max_iters: int = 10
    enforce_connectivity: bool = True

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidArgumentError(f"k must be a positive integer, got {self.k}")
        if self.compactness < 0:
            raise InvalidArgumentError(f"compactness must be >= 0, got {self.compactness}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise InvalidArgumentError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Per-pixel segment ids in ``[0, num_segments)``, every id used at least once."""

    labels: np.ndarray

    def __post_init__(self):
        lab = np.array(self.labels, dtype=np.int32)
        if lab.ndim != 2 or lab.size == 0:
            raise InvalidArgumentError(f"labels must be a non-empty 2-D array, got shape {lab.shape}")
        present = np.unique(lab)
        if present[0] != 0 or present[-1] != len(present) - 1:
            raise InvalidArgumentError("label ids must be dense, starting at 0")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "_count", len(present))

    @property
    def num_segments(self) -> int:
        return self._count

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LabelMap):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)


def segment_count(lm: LabelMap) -> int:
    return lm.num_segments


# sRGB (D65) -> XYZ
_RGB2XYZ = np.array(
    [
        [0.412453, 0.357580, 0.180423],
        [0.212671, 0.715160, 0.072169],
        [0.019334, 0.119193, 0.950227],
    ]
)
_D65_WHITE = np.array([0.950456, 1.0, 1.088754])


def rgb_to_lab(rgb) -> np.ndarray:
    """8-bit sRGB ``(..., 3)`` array to float CIELAB under a D65 white point."""
    c = np.asarray(rgb, dtype=np.float64) / 255.0
    lin = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = lin @ _RGB2XYZ.T / _D65_WHITE
    delta = 6.0 / 29.0
    f = np.where(xyz > delta**3, np.cbrt(xyz), xyz / (3 * delta**2) + 4.0 / 29.0)
    L = 116.0 * f[..., 1] - 16.0
    a = 500.0 * (f[..., 0] - f[..., 1])
    b = 200.0 * (f[..., 1] - f[..., 2])
    return np.stack([L, a, b], axis=-1)


def _grid_shape(k: int, w: int, h: int) -> tuple[int, int]:
    ny = min(h, max(1, int(math.floor(math.sqrt(k * h / w)))))
    nx = min(w, max(1, int(round(k / ny))))
    return nx, ny


def _seed_centers(lab: np.ndarray, k: int) -> np.ndarray:
    h, w, _ = lab.shape
    nx, ny = _grid_shape(k, w, h)
    padded = np.pad(lab, ((1, 1), (1, 1), (0, 0)), mode="edge")
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    grad = (gx * gx).sum(-1) + (gy * gy).sum(-1)

    centers = []
    for j in range(ny):
        cy = int((j + 0.5) * h / ny)
        for i in range(nx):
            cx = int((i + 0.5) * w / nx)
            best_x, best_y, best_g = cx, cy, grad[cy, cx]
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    x, y = cx + dx, cy + dy
                    if 0 <= x < w and 0 <= y < h and grad[y, x] < best_g:
                        best_x, best_y, best_g = x, y, grad[y, x]
            centers.append((*lab[best_y, best_x], best_x, best_y))
    return np.array(centers, dtype=np.float64)


def _assign(lab, centers, step, compactness, prev):
    h, w, _ = lab.shape
    dist = np.full((h, w), np.inf)
    labels = prev.copy()
    spatial_weight = (compactness / step) ** 2
    for idx, (L, a, b, cx, cy) in enumerate(centers):
        x0, x1 = max(0, int(math.floor(cx - step))), min(w, int(math.ceil(cx + step)) + 1)
        y0, y1 = max(0, int(math.floor(cy - step))), min(h, int(math.ceil(cy + step)) + 1)
        if x0 >= x1 or y0 >= y1:
            continue
        win = lab[y0:y1, x0:x1]
        d_lab = (win[..., 0] - L) ** 2 + (win[..., 1] - a) ** 2 + (win[..., 2] - b) ** 2
        xs = np.arange(x0, x1) - cx
        ys = np.arange(y0, y1) - cy
        d = d_lab + spatial_weight * (ys[:, None] ** 2 + xs[None, :] ** 2)
        # strict comparison: on equal distance the lower center index keeps the pixel
        better = d < dist[y0:y1, x0:x1]
        dist[y0:y1, x0:x1][better] = d[better]
        labels[y0:y1, x0:x1][better] = idx

    uncovered = np.isinf(dist)
    if uncovered.any():
        ys, xs = np.nonzero(uncovered)
        d2 = (xs[:, None] - centers[None, :, 3]) ** 2 + (ys[:, None] - centers[None, :, 4]) ** 2
        labels[ys, xs] = np.argmin(d2, axis=1)
    return labels


def _update_centers(lab, labels, centers):
    h, w, _ = lab.shape
    n = len(centers)
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=n).astype(np.float64)
    yy, xx = np.mgrid[0:h, 0:w]
    features = [lab[..., 0], lab[..., 1], lab[..., 2], xx, yy]
    sums = np.stack([np.bincount(flat, weights=f.ravel(), minlength=n) for f in features], axis=1)
    out = centers.copy()
    live = counts > 0
    out[live] = sums[live] / counts[live, None]
    return out


def _enforce_connectivity(labels: np.ndarray, min_size: float) -> np.ndarray:
    """Split labels into 4-connected components and merge small ones into neighbors."""
    comp = np.zeros(labels.shape, dtype=np.int64)
    n_comp = 0
    for lab in np.unique(labels):
        cc, n = ndimage.label(labels == lab, structure=_FOUR_CONNECTED)
        comp[cc > 0] = cc[cc > 0] + n_comp
        n_comp += n
    # process components in raster order of their first pixel
    comp = _densify(comp - 1)

    sizes = np.bincount(comp.ravel(), minlength=n_comp)
    pairs = np.concatenate(
        [
            np.stack([comp[:, :-1].ravel(), comp[:, 1:].ravel()], axis=1),
            np.stack([comp[:-1, :].ravel(), comp[1:, :].ravel()], axis=1),
        ]
    )
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    pairs = np.unique(np.sort(pairs, axis=1), axis=0)
    neighbors: list[set[int]] = [set() for _ in range(n_comp)]
    for a, b in pairs:
        neighbors[a].add(int(b))
        neighbors[b].add(int(a))

    parent = list(range(n_comp))
    size = sizes.astype(np.int64).tolist()

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in range(n_comp):
        root = find(c)
        if size[root] >= min_size:
            continue
        # rank neighbors by their own size so merges do not snowball
        for nb in sorted(neighbors[c], key=lambda r: (-sizes[r], r)):
            target = find(nb)
            if target != root:
                parent[root] = target
                size[target] += size[root]
                break

    roots = np.array([find(c) for c in range(n_comp)])
    return _densify(roots[comp])


def _densify(labels: np.ndarray) -> np.ndarray:
    _, first, dense = np.unique(labels.ravel(), return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty(len(first), dtype=np.int64)
    rank[order] = np.arange(len(first))
    return rank[dense].reshape(labels.shape)


def slic_segment(img: RasterImage, params: SlicParams | None = None) -> LabelMap:
    """Partition an RGB image into roughly ``params.k`` compact, color-coherent segments.

    Output ids are dense and numbered in raster order of each segment's first pixel.
    The result is deterministic for a given input and parameter set.
    """
    params = SlicParams() if params is None else params
    if not isinstance(img, RasterImage) or img.space is not ColorSpace.RGB:
        raise InvalidArgumentError("slic_segment needs an RGB RasterImage")
    h, w = img.height, img.width
    if params.k > h * w:
        raise InvalidArgumentError(f"k={params.k} exceeds the pixel count {h * w}")

    lab = rgb_to_lab(img.data)
    step = math.sqrt(h * w / params.k)
    centers = _seed_centers(lab, params.k)
    labels = np.full((h, w), -1, dtype=np.int64)
    for _ in range(params.max_iters):
        new = _assign(lab, centers, step, params.compactness, labels)
        changed = not np.array_equal(new, labels)
        labels = new
        centers = _update_centers(lab, labels, centers)
        if not changed:
            break

    if params.enforce_connectivity:
        labels = _enforce_connectivity(labels, step * step / 4.0)
    else:
        labels = _densify(labels)
    return LabelMap(labels)


def boundary_mask(lm: LabelMap) -> np.ndarray:
    """True where the right or lower neighbor carries a different label.

    Marking one side only keeps each boundary one pixel thick.
    """
    lab = lm.labels
    mask = np.zeros(lab.shape, dtype=bool)
    mask[:, :-1] |= lab[:, :-1] != lab[:, 1:]
    mask[:-1, :] |= lab[:-1, :] != lab[1:, :]
    return mask


def boundary_overlay(img: RasterImage, lm: LabelMap, color=BOUNDARY_COLOR) -> RasterImage:
    if not isinstance(img, RasterImage) or img.space is not ColorSpace.RGB:
        raise InvalidArgumentError("boundary_overlay needs an RGB RasterImage")
    if (img.width, img.height) != (lm.width, lm.height):
        raise InvalidArgumentError(
            f"image is {img.width}x{img.height} but label map is {lm.width}x{lm.height}"
        )
    out = img.data.copy()
    out[boundary_mask(lm)] = color
    return RasterImage(out, ColorSpace.RGB)


def label_map_to_image(lm: LabelMap) -> RasterImage:
    """Labels as gray levels, for dumping to PGM/PNG; needs at most 256 segments."""
    if lm.num_segments > 256:
        raise InvalidArgumentError(f"{lm.num_segments} segments do not fit in 8-bit gray levels")
    return RasterImage(lm.labels.astype(np.uint8), ColorSpace.GRAY)
