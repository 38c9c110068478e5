"""Segment boundary tracing, contour rescaling and polygon filling.

Contours are closed polygons through the centers of a component's outer
boundary pixels, found by Moore-neighbor border following.  Filling treats the
polygon as a closed set: a pixel is inside when its center lies on an edge or
has odd crossing parity, so tracing a blob and filling the trace gives the blob
back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import InvalidArgumentError
from .image import as_plane
from .slic import LabelMap

__all__ = ["Contour", "extract_contours", "trace_boundary", "scale_contour", "fill_polygon", "fill_contours"]

_FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)

# Moore neighborhood, clockwise on screen (y grows downward), starting west.
_MOORE = ((-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1))


@dataclass(frozen=True, eq=False)
class Contour:
    """Closed boundary polygon; ``points`` is an ``(n, 2)`` int array of ``(x, y)``."""

    points: np.ndarray
    segment_id: int = 0

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.int64).reshape(-1, 2)
        if len(pts) < 3:
            raise InvalidArgumentError(f"a contour needs at least 3 points, got {len(pts)}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, Contour):
            return NotImplemented
        return self.segment_id == other.segment_id and np.array_equal(self.points, other.points)


def trace_boundary(mask) -> list[tuple[int, int]]:
    """Moore-neighbor trace of the outer border of the single blob in ``mask``.

    Starts at the topmost-leftmost foreground pixel and walks clockwise.  Stops
    when the walk is about to repeat its first move, which handles blobs that
    pass through the start pixel more than once.
    """
    m = np.asarray(mask, dtype=bool)
    ys, xs = np.nonzero(m)
    if len(ys) == 0:
        return []
    h, w = m.shape
    start = (int(xs[0]), int(ys[0]))

    def fg(x, y):
        return 0 <= x < w and 0 <= y < h and m[y, x]

    def step(p, back_dir):
        # examine neighbors clockwise, beginning just after the backtrack cell
        for i in range(1, 9):
            d = (back_dir + i) % 8
            dx, dy = _MOORE[d]
            if fg(p[0] + dx, p[1] + dy):
                prev = (d + 7) % 8
                # new backtrack direction, seen from the pixel we move into
                bx = p[0] + _MOORE[prev][0] - (p[0] + dx)
                by = p[1] + _MOORE[prev][1] - (p[1] + dy)
                return (p[0] + dx, p[1] + dy), _MOORE.index((bx, by))
        return None, back_dir

    # the pixel west of the start is background by construction
    first, back = step(start, 0)
    if first is None:
        return [start]
    points = [start]
    p, b = first, back
    limit = 4 * m.size + 8
    while len(points) < limit:
        nxt, nb = step(p, b)
        if p == start and nxt == first:
            break
        points.append(p)
        p, b = nxt, nb
    return points


def extract_contours(lm: LabelMap, segment_id: int) -> list[Contour]:
    """One outer contour per 4-connected component of ``segment_id``.

    Components are returned in raster order of their first pixel.  Components
    too small to give three boundary points are skipped, as is an absent id.
    """
    binary = lm.labels == segment_id
    comps, n = ndimage.label(binary, structure=_FOUR_CONNECTED)
    contours = []
    for idx, sl in enumerate(ndimage.find_objects(comps), start=1):
        if sl is None:
            continue
        sub = comps[sl] == idx
        pts = trace_boundary(sub)
        if len(pts) < 3:
            continue
        offset = np.array([sl[1].start, sl[0].start])
        contours.append(Contour(np.asarray(pts) + offset, segment_id))
    return contours


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5)


def scale_contour(c: Contour, factor: float, bounds=None, pixel_centers: bool = True) -> Contour | None:
    """Rescale a contour to another resolution; ``None`` if it degenerates.

    With ``pixel_centers`` the mapping keeps pixel centers aligned,
    ``x' = (x + 0.5) * factor - 0.5``, matching the resampling convention;
    otherwise points are simply multiplied.  Results are rounded half up,
    clamped into ``bounds = (width, height)`` when given, and consecutive
    duplicates are collapsed.
    """
    if factor <= 0:
        raise InvalidArgumentError(f"scale factor must be positive, got {factor}")
    pts = c.points.astype(np.float64)
    if pixel_centers:
        pts = (pts + 0.5) * factor - 0.5
    else:
        pts = pts * factor
    pts = _round_half_up(pts).astype(np.int64)
    if bounds is not None:
        w, h = bounds
        pts[:, 0] = np.clip(pts[:, 0], 0, w - 1)
        pts[:, 1] = np.clip(pts[:, 1], 0, h - 1)
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    pts = pts[keep]
    while len(pts) > 1 and np.array_equal(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 3:
        return None
    return Contour(pts, c.segment_id)


def _polygon_mask(points: np.ndarray, w: int, h: int) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    x0, y0 = pts[:, 0], pts[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    out = np.zeros((h, w), dtype=bool)

    # interior by even-odd parity, edges counted on [ymin, ymax)
    sloped = y0 != y1
    if sloped.any():
        ex0, ey0, ex1, ey1 = x0[sloped], y0[sloped], x1[sloped], y1[sloped]
        lo, hi = np.minimum(ey0, ey1), np.maximum(ey0, ey1)
        r0, r1 = max(int(lo.min()), 0), min(int(hi.max()), h)
        rows = np.arange(r0, r1)
        if len(rows):
            active = (rows[:, None] >= lo[None, :]) & (rows[:, None] < hi[None, :])
            with np.errstate(divide="ignore", invalid="ignore"):
                xs = ex0 + (rows[:, None] - ey0) * (ex1 - ex0) / (ey1 - ey0)
            xs = np.where(active, xs, np.inf)
            xs.sort(axis=1)
            n_pairs = active.sum(axis=1).max() // 2
            diff = np.zeros((len(rows), w + 1), dtype=np.int64)
            ridx = np.arange(len(rows))
            for k in range(n_pairs):
                xa, xb = xs[:, 2 * k], xs[:, 2 * k + 1]
                ok = np.isfinite(xb)
                a = np.clip(np.ceil(xa[ok]), 0, w).astype(np.int64)
                b = np.clip(np.floor(xb[ok]) + 1, 0, w).astype(np.int64)
                ok_span = a < b
                np.add.at(diff, (ridx[ok][ok_span], a[ok_span]), 1)
                np.add.at(diff, (ridx[ok][ok_span], b[ok_span]), -1)
            out[r0:r1] = np.cumsum(diff, axis=1)[:, :w] > 0

    # lattice points lying on the edges themselves
    dx, dy = x1 - x0, y1 - y0
    g = np.gcd(np.abs(dx), np.abs(dy))
    for i in range(len(pts)):
        n = max(int(g[i]), 1)
        t = np.arange(n + 1)
        px = x0[i] + t * (dx[i] // n)
        py = y0[i] + t * (dy[i] // n)
        ok = (px >= 0) & (px < w) & (py >= 0) & (py < h)
        out[py[ok], px[ok]] = True
    return out


def fill_contours(contours, w: int, h: int) -> np.ndarray:
    """Boolean union of the filled polygons of several contours."""
    out = np.zeros((h, w), dtype=bool)
    for c in contours:
        out |= _polygon_mask(c.points if isinstance(c, Contour) else c, w, h)
    return out


def fill_polygon(c, w: int, h: int, source=None) -> np.ndarray:
    """Rasterize a closed polygon into a ``h x w`` plane.

    Without ``source`` the result is a binary mask (255 inside, 0 outside).
    With ``source`` inside pixels copy the source samples and the rest are 0.
    """
    pts = c.points if isinstance(c, Contour) else np.asarray(c)
    inside = _polygon_mask(pts, w, h)
    if source is None:
        return np.where(inside, np.uint8(255), np.uint8(0))
    src = as_plane(source)
    if src.shape != (h, w):
        raise InvalidArgumentError(f"source plane is {src.shape[1]}x{src.shape[0]}, expected {w}x{h}")
    return np.where(inside, src, np.uint8(0))
