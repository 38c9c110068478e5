"""Segment-wise image enlargement that keeps interpolation from mixing colors
across region borders.

Stages:

1. *Preprocess*: plain interpolation of the low-resolution (LR) input to the
   target size gives the guide image.
2. *Segment*: SLIC on the guide; each segment's outer contours are traced and
   mapped back to LR coordinates.
3. *Enhance*: in YCbCr, for each segment, the LR channel samples inside the
   segment polygon are kept, the background is filled by conditional dilation,
   and the result is interpolated up to the target size.
4. *Merge*: each segment's upscaled samples are copied into the output inside
   its high-resolution polygon, in ascending label order.  Pixels no segment
   wrote come from the guide.  The planes are converted back to RGB.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .contour import extract_contours, fill_contours, scale_contour
from .errors import InvalidArgumentError
from .fileio import save_image
from .image import ColorSpace, RasterImage, pad_replicate, rgb_to_ycbcr, to_uint8, ycbcr_to_rgb
from .morphology import StructuringElement, conditional_dilate
from .resample import InterpMethod, axis_weights, resize_image
from .slic import LabelMap, SlicParams, boundary_overlay, slic_segment

__all__ = ["PipelineConfig", "PipelineTrace", "enlarge", "enlarge_baseline", "dump_trace", "TRACE_FILES"]

TRACE_FILES = (
    "fig5_guide.png",
    "fig6_slic.png",
    "fig7_mask_a.png",
    "fig8_mask_b.png",
    "fig9_dilated.png",
    "fig10_upscaled.png",
)


@dataclass(frozen=True)
class PipelineConfig:
    scale: int = 4
    base_interp: InterpMethod = InterpMethod.BICUBIC
    slic: SlicParams = field(default_factory=SlicParams)
    window: int = 5
    dilation_passes: int = 1
    pad_margin: int = 2
    # map contours between resolutions with pixel centers aligned
    pixel_centers: bool = True

    def __post_init__(self):
        object.__setattr__(self, "base_interp", InterpMethod.parse(self.base_interp))
        if int(self.scale) != self.scale or self.scale < 2:
            raise InvalidArgumentError(f"scale must be an integer >= 2, got {self.scale}")
        if self.base_interp is InterpMethod.NEAREST:
            raise InvalidArgumentError("the pipeline needs bilinear or bicubic interpolation")
        if self.window < 1 or self.window % 2 == 0:
            raise InvalidArgumentError(f"window must be a positive odd size, got {self.window}")
        if self.dilation_passes < 1:
            raise InvalidArgumentError(f"dilation_passes must be >= 1, got {self.dilation_passes}")
        if self.pad_margin < 0:
            raise InvalidArgumentError(f"pad_margin must be >= 0, got {self.pad_margin}")

    def with_interp(self, method) -> "PipelineConfig":
        return replace(self, base_interp=InterpMethod.parse(method))

    def snapshot(self) -> dict:
        return {
            "scale": self.scale,
            "base_interp": self.base_interp.value,
            "segments": self.slic.k,
            "compactness": self.slic.compactness,
            "max_iters": self.slic.max_iters,
            "enforce_connectivity": self.slic.enforce_connectivity,
            "window": self.window,
            "dilation_passes": self.dilation_passes,
            "pad_margin": self.pad_margin,
            "pixel_centers": self.pixel_centers,
        }


@dataclass
class PipelineTrace:
    """Intermediate results, indexed by segment id where per-segment.

    Per-segment lists hold ``None`` for segments whose contour vanished at LR
    resolution.  Channel stacks are ``(3, h, w)`` in Y, Cb, Cr order.
    """

    guide: RasterImage
    label_map: LabelMap
    masks_a: list = field(default_factory=list)
    masks_b: list = field(default_factory=list)
    dilated: list = field(default_factory=list)
    upscaled: list = field(default_factory=list)


def enlarge_baseline(lr: RasterImage, scale: int = 4, method=InterpMethod.BICUBIC) -> RasterImage:
    """Plain interpolation by an integer factor; any method, including nearest."""
    if int(scale) != scale or scale < 1:
        raise InvalidArgumentError(f"scale must be a positive integer, got {scale}")
    return resize_image(lr, lr.width * scale, lr.height * scale, method)


def _grow(plane: np.ndarray, region: np.ndarray, se: StructuringElement, passes: int, margin: int):
    if margin:
        plane = pad_replicate(plane, margin)
        region = np.pad(region, margin, mode="edge")
    for _ in range(passes):
        plane = conditional_dilate(plane, region, se)
    if margin:
        plane = plane[margin:-margin, margin:-margin]
    return plane


def enlarge(lr: RasterImage, cfg: PipelineConfig | None = None, trace: bool = False):
    """Enlarge an RGB image by ``cfg.scale``; returns ``(image, trace or None)``."""
    cfg = PipelineConfig() if cfg is None else cfg
    if not isinstance(lr, RasterImage) or lr.space is not ColorSpace.RGB:
        raise InvalidArgumentError("enlarge needs an RGB RasterImage")
    w, h = lr.size
    big_w, big_h = w * cfg.scale, h * cfg.scale
    method = cfg.base_interp

    guide = resize_image(lr, big_w, big_h, method)
    labels = slic_segment(guide, cfg.slic)
    rec = PipelineTrace(guide, labels) if trace else None

    lr_planes = [p.astype(np.uint8) for p in rgb_to_ycbcr(lr).planes]
    se = StructuringElement.flat(cfg.window)
    wy = axis_weights(h, big_h, method)
    wx = axis_weights(w, big_w, method)

    out = np.zeros((big_h, big_w, 3), dtype=np.uint8)
    written = np.zeros((big_h, big_w), dtype=bool)
    for seg in range(labels.num_segments):
        hr_contours = extract_contours(labels, seg)
        lr_contours = [scale_contour(c, 1.0 / cfg.scale, (w, h), cfg.pixel_centers) for c in hr_contours]
        lr_contours = [c for c in lr_contours if c is not None]
        if not lr_contours:
            if rec:
                for lst in (rec.masks_a, rec.masks_b, rec.dilated, rec.upscaled):
                    lst.append(None)
            continue

        region = fill_contours(lr_contours, w, h)
        hr_mask = fill_contours(hr_contours, big_w, big_h)
        rows = np.flatnonzero(hr_mask.any(axis=1))
        cols = np.flatnonzero(hr_mask.any(axis=0))
        if trace:
            rows, cols = np.arange(big_h), np.arange(big_w)
        box = np.ix_(rows, cols)
        sub_mask = hr_mask[box]

        masks_b, grown, ups = [], [], []
        for ch, plane in enumerate(lr_planes):
            b = np.where(region, plane, np.uint8(0))
            g = _grow(b, region, se, cfg.dilation_passes, cfg.pad_margin)
            up = to_uint8(wy[rows] @ g.astype(np.float64) @ wx[cols].T)
            out[..., ch][box] = np.where(sub_mask, up, out[..., ch][box])
            if rec:
                masks_b.append(b)
                grown.append(g)
                ups.append(up)
        written |= hr_mask
        if rec:
            rec.masks_a.append(region)
            rec.masks_b.append(np.stack(masks_b))
            rec.dilated.append(np.stack(grown))
            rec.upscaled.append(np.stack(ups))

    if not written.all():
        guide_ycc = rgb_to_ycbcr(guide).data
        out[~written] = guide_ycc[~written]
    result = ycbcr_to_rgb(RasterImage(out, ColorSpace.YCBCR))
    return result, rec


def dump_trace(rec: PipelineTrace, directory, segment: int | None = None) -> list[Path]:
    """Write the six stage images; per-segment ones show ``segment`` (default: first
    segment that survived) and the Y channel."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if segment is None:
        segment = next((i for i, m in enumerate(rec.masks_a) if m is not None), None)
    gray = lambda a: RasterImage(np.asarray(a, dtype=np.uint8), ColorSpace.GRAY)  # noqa: E731
    images = [rec.guide, boundary_overlay(rec.guide, rec.label_map)]
    if segment is not None and rec.masks_a[segment] is not None:
        images += [
            gray(rec.masks_a[segment].astype(np.uint8) * 255),
            gray(rec.masks_b[segment][0]),
            gray(rec.dilated[segment][0]),
            gray(rec.upscaled[segment][0]),
        ]
    else:
        blank_lr = np.zeros((rec.guide.height, rec.guide.width), np.uint8)
        images += [gray(blank_lr)] * 4
    paths = []
    for name, img in zip(TRACE_FILES, images):
        path = directory / name
        save_image(img, path)
        paths.append(path)
    return paths
