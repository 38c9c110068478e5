"""Command-line front end: ``slicmag {enlarge,baseline,segment,benchmark}``.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 processing error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np
import tomli

from .bench import emit_table, run_benchmark
from .errors import ImageIOError, InvalidArgumentError, SlicmagError
from .fileio import load_image, save_image
from .image import ColorSpace, RasterImage
from .pipeline import PipelineConfig, dump_trace, enlarge, enlarge_baseline
from .resample import InterpMethod
from .slic import SlicParams, boundary_overlay, label_map_to_image, slic_segment

log = logging.getLogger("slicmag")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_PROCESSING = 0, 1, 2, 3

_SLIC_DEFAULTS = {f.name: f.default for f in fields(SlicParams)}
_PIPE_DEFAULTS = {f.name: f.default for f in fields(PipelineConfig) if f.name != "slic"}

# option name -> default; every value comes from the library dataclasses
DEFAULTS = {
    "scale": _PIPE_DEFAULTS["scale"],
    "interp": _PIPE_DEFAULTS["base_interp"].value,
    "segments": _SLIC_DEFAULTS["k"],
    "compactness": _SLIC_DEFAULTS["compactness"],
    "max_iters": _SLIC_DEFAULTS["max_iters"],
    "no_connectivity": not _SLIC_DEFAULTS["enforce_connectivity"],
    "window": _PIPE_DEFAULTS["window"],
    "passes": _PIPE_DEFAULTS["dilation_passes"],
    "pad_margin": _PIPE_DEFAULTS["pad_margin"],
    "format": "csv",
    "downscale": InterpMethod.BICUBIC.value,
    "psnr_channel": "rgb",
    "crop_border": 0,
    "gt_size": 256,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_pipeline_options(p: argparse.ArgumentParser, full: bool = True) -> None:
    d = DEFAULTS
    p.add_argument("--scale", type=int, help=f"integer enlargement factor (default {d['scale']})")
    if full:
        p.add_argument("--interp", choices=["bilinear", "bicubic"], help=f"base interpolation (default {d['interp']})")
        p.add_argument("--window", type=int, help=f"odd dilation window size (default {d['window']})")
        p.add_argument("--passes", type=int, help=f"conditional dilation passes (default {d['passes']})")
        p.add_argument("--pad-margin", type=int, help=f"replicate padding around masks (default {d['pad_margin']})")
    _add_slic_options(p)


def _add_slic_options(p: argparse.ArgumentParser) -> None:
    d = DEFAULTS
    p.add_argument("--segments", type=int, help=f"requested SLIC superpixel count (default {d['segments']})")
    p.add_argument("--compactness", type=float, help=f"SLIC compactness m (default {d['compactness']})")
    p.add_argument("--max-iters", type=int, help=f"SLIC iteration cap (default {d['max_iters']})")
    p.add_argument(
        "--no-connectivity", action="store_true", default=None,
        help="skip merging of disconnected superpixel fragments",
    )
    p.add_argument("--config", type=Path, help="TOML file with option defaults (flags take precedence)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slicmag", description="Region-wise image enlargement with SLIC superpixels.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("enlarge", help="enlarge an image with the segment-wise pipeline")
    p.add_argument("-i", "--input", required=True, type=Path)
    p.add_argument("-o", "--output", required=True, type=Path)
    p.add_argument("--trace", type=Path, metavar="DIR", help="write the six stage images to DIR")
    _add_pipeline_options(p)

    p = sub.add_parser("baseline", help="enlarge with plain interpolation")
    p.add_argument("-i", "--input", required=True, type=Path)
    p.add_argument("-o", "--output", required=True, type=Path)
    p.add_argument("--scale", type=int, help=f"integer enlargement factor (default {DEFAULTS['scale']})")
    p.add_argument("--interp", choices=[m.value for m in InterpMethod], help=f"interpolation (default {DEFAULTS['interp']})")
    p.add_argument("--config", type=Path, help="TOML file with option defaults (flags take precedence)")

    p = sub.add_parser("segment", help="draw SLIC superpixel boundaries over an image")
    p.add_argument("-i", "--input", required=True, type=Path)
    p.add_argument("-o", "--output", required=True, type=Path)
    p.add_argument("--labels", type=Path, help="also write the label map as a PGM/PNG (at most 256 segments)")
    _add_slic_options(p)

    p = sub.add_parser("benchmark", help="four-arm PSNR table over a directory of images")
    p.add_argument("-d", "--dataset", required=True, type=Path)
    p.add_argument("-o", "--output", type=Path, help="table file (default: standard output)")
    p.add_argument("--format", choices=["csv", "md", "markdown"], help="table format (default csv)")
    p.add_argument("--downscale", choices=[m.value for m in InterpMethod],
                   help=f"kernel for ground-truth and LR preparation (default {DEFAULTS['downscale']})")
    p.add_argument("--psnr-channel", choices=["rgb", "y"], help="PSNR over RGB or luma only (default rgb)")
    p.add_argument("--crop-border", type=int, help="pixels dropped at each side before PSNR (default 0)")
    p.add_argument("--gt-size", type=int, help=f"ground-truth side length (default {DEFAULTS['gt_size']})")
    _add_pipeline_options(p, full=True)
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    cfg_path = getattr(args, "config", None)
    if cfg_path is not None:
        try:
            with open(cfg_path, "rb") as fh:
                data = tomli.load(fh)
        except OSError as exc:
            raise ImageIOError(f"{cfg_path}: cannot read config ({exc.strerror or exc})") from exc
        except tomli.TOMLDecodeError as exc:
            raise UsageError(f"{cfg_path}: invalid TOML ({exc})") from exc
        for key, value in data.items():
            norm = key.replace("-", "_")
            if norm not in DEFAULTS:
                raise UsageError(f"{cfg_path}: unknown option {key!r}")
            opts[norm] = value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    return opts


# leading word of a validation message -> the flag that supplied the value
_FLAG_FOR_FIELD = {
    "k": "--segments",
    "compactness": "--compactness",
    "max_iters": "--max-iters",
    "scale": "--scale",
    "the": "--interp",
    "window": "--window",
    "dilation_passes": "--passes",
    "pad_margin": "--pad-margin",
}


def _pipeline_config(opts: dict) -> PipelineConfig:
    try:
        slic = SlicParams(
            k=opts["segments"],
            compactness=opts["compactness"],
            max_iters=opts["max_iters"],
            enforce_connectivity=not opts["no_connectivity"],
        )
        return PipelineConfig(
            scale=opts["scale"],
            base_interp=opts["interp"],
            slic=slic,
            window=opts["window"],
            dilation_passes=opts["passes"],
            pad_margin=opts["pad_margin"],
        )
    except InvalidArgumentError as exc:
        flag = _FLAG_FOR_FIELD.get(str(exc).split(" ", 1)[0], "option")
        raise UsageError(f"{flag}: {exc}") from exc


def _load_rgb(path: Path) -> RasterImage:
    img = load_image(path)
    if img.space is ColorSpace.GRAY:
        img = RasterImage(np.repeat(img.data, 3, axis=2), ColorSpace.RGB)
    return img


def _cmd_enlarge(args, opts):
    cfg = _pipeline_config(opts)
    img = _load_rgb(args.input)
    out, rec = enlarge(img, cfg, trace=args.trace is not None)
    save_image(out, args.output)
    if rec is not None:
        dump_trace(rec, args.trace)
    log.info("wrote %s (%dx%d)", args.output, out.width, out.height)


def _cmd_baseline(args, opts):
    try:
        method = InterpMethod.parse(opts["interp"])
    except InvalidArgumentError as exc:
        raise UsageError(f"--interp: {exc}") from exc
    img = _load_rgb(args.input)
    save_image(enlarge_baseline(img, opts["scale"], method), args.output)


def _cmd_segment(args, opts):
    params = _pipeline_config(opts).slic
    img = _load_rgb(args.input)
    lm = slic_segment(img, params)
    save_image(boundary_overlay(img, lm), args.output)
    if args.labels is not None:
        save_image(label_map_to_image(lm), args.labels)
    log.info("%d segments", lm.num_segments)


def _cmd_benchmark(args, opts):
    cfg = _pipeline_config(opts)
    run = run_benchmark(
        args.dataset,
        cfg,
        downscale=opts["downscale"],
        psnr_channel=opts["psnr_channel"],
        crop_border=opts["crop_border"],
        gt_size=opts["gt_size"],
    )
    table = emit_table(run, opts["format"])
    if args.output is None:
        sys.stdout.write(table)
    else:
        try:
            args.output.write_text(table)
        except OSError as exc:
            raise ImageIOError(f"{args.output}: cannot write table ({exc.strerror or exc})") from exc
    if run.direction_ok() is False:
        log.warning("a SLIC arm did not beat its baseline on average: %s", run.deltas())


_COMMANDS = {
    "enlarge": _cmd_enlarge,
    "baseline": _cmd_baseline,
    "segment": _cmd_segment,
    "benchmark": _cmd_benchmark,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("slicmag: a subcommand is required", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        _COMMANDS[args.command](args, _resolve(args))
    except UsageError as exc:
        print(f"slicmag {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImageIOError as exc:
        print(f"slicmag {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SlicmagError, ValueError) as exc:
        print(f"slicmag {args.command}: {exc}", file=sys.stderr)
        return EXIT_PROCESSING
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
