"""Lossless image file I/O: 8-bit PNG and binary PPM (P6) / PGM (P5).

PNG decoding and encoding is delegated to Pillow; the netpbm formats are
simple enough to handle directly.
"""
from __future__ import annotations

import io
import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import (
    CorruptImageError,
    ImageIOError,
    InvalidArgumentError,
    UnsupportedBitDepthError,
    UnsupportedFormatError,
)
from .image import ColorSpace, RasterImage

__all__ = ["load_image", "save_image", "read_netpbm", "write_netpbm"]

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_NETPBM_EXTS = {".ppm", ".pgm", ".pnm"}


def load_image(path) -> RasterImage:
    """Decode a PNG, PPM or PGM file into an 8-bit RGB or Gray image.

    Alpha channels are dropped and palette images are expanded to RGB.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ImageIOError(f"{path}: cannot read file ({exc.strerror or exc})") from exc

    if raw.startswith(_PNG_SIGNATURE):
        return _decode_png(raw, path)
    if raw[:2] in (b"P5", b"P6"):
        return read_netpbm(raw, name=str(path))
    if raw[:2] in (b"P1", b"P2", b"P3", b"P4"):
        raise UnsupportedFormatError(f"{path}: only binary P5/P6 netpbm files are supported")
    raise UnsupportedFormatError(f"{path}: not a PNG, PPM or PGM file")


def save_image(img: RasterImage, path) -> None:
    """Write ``img`` as PNG or PPM/PGM according to the file extension."""
    if not isinstance(img, RasterImage):
        raise InvalidArgumentError(f"expected RasterImage, got {type(img).__name__}")
    if img.space is ColorSpace.YCBCR:
        raise InvalidArgumentError("YCbCr images must be converted to RGB before saving")
    path = Path(path)
    ext = path.suffix.lower()
    try:
        if ext == ".png":
            mode = "L" if img.space is ColorSpace.GRAY else "RGB"
            arr = img.data[:, :, 0] if mode == "L" else img.data
            Image.fromarray(np.ascontiguousarray(arr), mode=mode).save(path, format="PNG")
        elif ext in _NETPBM_EXTS:
            path.write_bytes(write_netpbm(img))
        else:
            raise UnsupportedFormatError(f"{path}: unknown image extension {ext!r}")
    except OSError as exc:
        if isinstance(exc, ImageIOError):
            raise
        raise ImageIOError(f"{path}: cannot write file ({exc.strerror or exc})") from exc


def write_netpbm(img: RasterImage) -> bytes:
    magic = b"P5" if img.space is ColorSpace.GRAY else b"P6"
    header = b"%s %d %d 255\n" % (magic, img.width, img.height)
    return header + np.ascontiguousarray(img.data).tobytes()


def read_netpbm(raw: bytes, name: str = "<bytes>") -> RasterImage:
    magic = raw[:2]
    channels = 1 if magic == b"P5" else 3
    pos = 2
    fields = []
    while len(fields) < 3:
        # whitespace and '#' comments may separate header fields
        while pos < len(raw) and raw[pos : pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos : pos + 1] == b"#":
            while pos < len(raw) and raw[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(raw) and raw[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise CorruptImageError(f"{name}: malformed netpbm header")
        fields.append(int(raw[start:pos]))
    if pos >= len(raw) or not raw[pos : pos + 1].isspace():
        raise CorruptImageError(f"{name}: malformed netpbm header")
    pos += 1
    width, height, maxval = fields
    if maxval > 255:
        raise UnsupportedBitDepthError(f"{name}: maxval {maxval} needs more than 8 bits")
    if width < 1 or height < 1 or maxval < 1:
        raise CorruptImageError(f"{name}: invalid dimensions or maxval")
    n = width * height * channels
    body = raw[pos : pos + n]
    if len(body) < n:
        raise CorruptImageError(f"{name}: pixel data truncated ({len(body)} of {n} bytes)")
    data = np.frombuffer(body, dtype=np.uint8).reshape(height, width, channels)
    if data.max(initial=0) > maxval:
        raise CorruptImageError(f"{name}: sample exceeds maxval {maxval}")
    space = ColorSpace.GRAY if channels == 1 else ColorSpace.RGB
    return RasterImage(data, space)


def _decode_png(raw: bytes, path: Path) -> RasterImage:
    # IHDR is always the first chunk: length(4) type(4) w(4) h(4) depth(1) ctype(1)
    if len(raw) < 33 or raw[12:16] != b"IHDR":
        raise CorruptImageError(f"{path}: missing IHDR chunk")
    depth, ctype = struct.unpack(">BB", raw[24:26])
    if depth > 8:
        raise UnsupportedBitDepthError(f"{path}: {depth}-bit PNG samples are not supported")

    try:
        with Image.open(io.BytesIO(raw)) as im:
            im.load()
            if im.mode in ("L", "1", "LA") or (im.mode == "P" and ctype == 0):
                arr = np.asarray(im.convert("L"))
                return RasterImage(arr, ColorSpace.GRAY)
            arr = np.asarray(im.convert("RGB"))
            return RasterImage(arr, ColorSpace.RGB)
    except (OSError, SyntaxError, ValueError) as exc:
        raise CorruptImageError(f"{path}: corrupt PNG stream ({exc})") from exc
