"""Four-arm PSNR benchmark: bicubic, SLIC bicubic, bilinear, SLIC bilinear.

For each image in a directory: center-crop to a square, resize to the
ground-truth size (256 by default), down-scale by the pipeline factor, then
enlarge back with each arm and score it against the ground truth.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, SlicmagError
from .fileio import load_image
from .image import ColorSpace, RasterImage
from .metrics import PSNR_CHANNELS, psnr
from .pipeline import PipelineConfig, enlarge, enlarge_baseline
from .resample import InterpMethod, resize_image

log = logging.getLogger(__name__)

__all__ = ["ARMS", "ARM_TITLES", "BenchRow", "BenchRun", "run_benchmark", "emit_table", "prepare_pair", "worker_count"]

ARMS = ("bicubic", "slic_bicubic", "bilinear", "slic_bilinear")
ARM_TITLES = {
    "bicubic": "Bicubic",
    "slic_bicubic": "SLIC based bicubic",
    "bilinear": "Bilinear",
    "slic_bilinear": "SLIC based bilinear",
}
IMAGE_SUFFIXES = {".png", ".ppm", ".pgm", ".pnm"}


@dataclass
class BenchRow:
    image: str
    psnr: dict = field(default_factory=dict)  # arm -> dB
    errors: dict = field(default_factory=dict)  # arm (or "image") -> message

    @property
    def complete(self) -> bool:
        return all(arm in self.psnr for arm in ARMS)


@dataclass
class BenchRun:
    dataset: str
    rows: list = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def averages(self) -> dict:
        """Mean PSNR per arm over complete rows; empty when there are none."""
        done = [r for r in self.rows if r.complete]
        if not done:
            return {}
        return {arm: float(np.mean([r.psnr[arm] for r in done])) for arm in ARMS}

    def deltas(self) -> dict:
        avg = self.averages()
        if not avg:
            return {}
        return {
            "bicubic": avg["slic_bicubic"] - avg["bicubic"],
            "bilinear": avg["slic_bilinear"] - avg["bilinear"],
        }

    def direction_ok(self) -> bool | None:
        """True when both SLIC arms beat their plain counterpart on average."""
        d = self.deltas()
        if not d:
            return None
        return all(v > 0 for v in d.values())


def worker_count() -> int:
    """Worker cap from ``SLICMAG_THREADS`` (0 or unset: one per CPU)."""
    raw = os.environ.get("SLICMAG_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"SLICMAG_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidArgumentError(f"SLICMAG_THREADS must be >= 0, got {n}")
    return n or (os.cpu_count() or 1)


def _center_square(img: RasterImage) -> RasterImage:
    s = min(img.width, img.height)
    y0, x0 = (img.height - s) // 2, (img.width - s) // 2
    data = img.data[y0 : y0 + s, x0 : x0 + s]
    if img.space is ColorSpace.GRAY:
        data = np.repeat(data, 3, axis=2)
    return RasterImage(data, ColorSpace.RGB)


def prepare_pair(img: RasterImage, gt_size: int, scale: int, downscale: InterpMethod):
    """Ground truth (``gt_size`` square) and its low-resolution counterpart."""
    gt = resize_image(_center_square(img), gt_size, gt_size, downscale)
    lr = resize_image(gt, gt_size // scale, gt_size // scale, downscale)
    return gt, lr


def _score_image(path: Path, cfg: PipelineConfig, downscale, channel, crop_border, gt_size) -> BenchRow:
    row = BenchRow(path.name)
    try:
        gt, lr = prepare_pair(load_image(path), gt_size, cfg.scale, downscale)
    except SlicmagError as exc:
        row.errors["image"] = str(exc)
        return row
    for arm in ARMS:
        method = InterpMethod.BILINEAR if arm.endswith("bilinear") else InterpMethod.BICUBIC
        try:
            if arm.startswith("slic_"):
                out, _ = enlarge(lr, cfg.with_interp(method))
            else:
                out = enlarge_baseline(lr, cfg.scale, method)
            row.psnr[arm] = psnr(out, gt, channel, crop_border).psnr_db
        except SlicmagError as exc:
            row.errors[arm] = str(exc)
    log.info("%s: %s", path.name, {k: round(v, 2) for k, v in row.psnr.items()})
    return row


def run_benchmark(
    dataset_dir,
    cfg: PipelineConfig | None = None,
    downscale=InterpMethod.BICUBIC,
    psnr_channel: str = "rgb",
    crop_border: int = 0,
    gt_size: int = 256,
) -> BenchRun:
    cfg = PipelineConfig() if cfg is None else cfg
    downscale = InterpMethod.parse(downscale)
    if psnr_channel not in PSNR_CHANNELS:
        raise InvalidArgumentError(f"psnr channel must be one of {PSNR_CHANNELS}, got {psnr_channel!r}")
    if gt_size % cfg.scale:
        raise InvalidArgumentError(f"ground-truth size {gt_size} is not divisible by scale {cfg.scale}")
    root = Path(dataset_dir)
    if not root.is_dir():
        raise InvalidArgumentError(f"{root}: not a directory")
    paths = sorted(p for p in root.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES)
    if not paths:
        raise InvalidArgumentError(f"{root}: no PNG/PPM/PGM images found")

    def job(p):
        return _score_image(p, cfg, downscale, psnr_channel, crop_border, gt_size)

    workers = min(worker_count(), len(paths))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, paths))
    else:
        rows = [job(p) for p in paths]

    snapshot = {
        "dataset": root.name,
        "ground_truth": f"center square crop, {downscale.value} resize to {gt_size}x{gt_size}",
        "low_resolution": f"{downscale.value} down-scale to {gt_size // cfg.scale}x{gt_size // cfg.scale}",
        "downscale": downscale.value,
        "psnr_channel": psnr_channel,
        "crop_border": crop_border,
        "comparison": f"every arm output vs the {gt_size}x{gt_size} ground truth",
    }
    snapshot.update({f"pipeline.{k}": v for k, v in cfg.snapshot().items() if k != "base_interp"})
    return BenchRun(root.name, rows, snapshot)


def _fmt(v: float) -> str:
    return "inf" if math.isinf(v) else f"{v:.2f}"


def _summary_lines(run: BenchRun) -> list[str]:
    lines = [f"{k}: {v}" for k, v in run.config.items()]
    for key, delta in run.deltas().items():
        lines.append(f"delta_slic_{key}_db: {delta:+.3f}")
    ok = run.direction_ok()
    if ok is not None:
        lines.append("direction: " + ("SLIC arms improve on both baselines" if ok else "FAILED - a SLIC arm does not beat its baseline"))
    for row in run.rows:
        for arm, msg in row.errors.items():
            lines.append(f"error {row.image} [{arm}]: {msg}")
    return lines


def emit_table(run: BenchRun, fmt: str = "csv") -> str:
    """Render one row per image plus an average row, with a trailing config block."""
    fmt = {"md": "markdown"}.get(fmt, fmt)
    if fmt not in ("csv", "markdown"):
        raise InvalidArgumentError(f"table format must be csv or markdown, got {fmt!r}")
    avg = run.averages()
    body = [(r.image, [_fmt(r.psnr[a]) if a in r.psnr else "" for a in ARMS]) for r in run.rows]
    if avg:
        body.append(("average", [_fmt(avg[a]) for a in ARMS]))

    if fmt == "csv":
        out = [",".join(("image",) + ARMS)]
        out += [",".join([name.replace(",", "_")] + cells) for name, cells in body]
        out += ["# " + line for line in _summary_lines(run)]
    else:
        out = ["| Image | " + " | ".join(ARM_TITLES[a] for a in ARMS) + " |"]
        out.append("|" + "---|" * (len(ARMS) + 1))
        out += [f"| {'Average' if name == 'average' and avg else name} | " + " | ".join(cells) + " |" for name, cells in body]
        out += ["", "<!--"] + _summary_lines(run) + ["-->"]
    return "\n".join(out) + "\n"
