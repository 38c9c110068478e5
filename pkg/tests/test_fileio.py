import struct
import zlib

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from PIL import Image

from slicmag.errors import (
    CorruptImageError,
    ImageIOError,
    InvalidArgumentError,
    UnsupportedBitDepthError,
    UnsupportedFormatError,
)
from slicmag.fileio import load_image, save_image
from slicmag.image import ColorSpace, RasterImage


def test_load_p6(tmp_path):
    body = bytes([10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120])
    path = tmp_path / "a.ppm"
    path.write_bytes(b"P6 2 2 255\n" + body)
    img = load_image(path)
    assert img.space is ColorSpace.RGB
    assert img.data.ravel().tolist() == list(body)
    assert img.data[1, 0].tolist() == [70, 80, 90]


def test_load_p5_single_pixel(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P5\n1 1\n255\n\x07")
    img = load_image(path)
    assert img.space is ColorSpace.GRAY
    assert img.data[0, 0, 0] == 7


def test_netpbm_header_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# made by hand\n2 1 # width height\n255\n\x01\x02")
    assert load_image(path).data.ravel().tolist() == [1, 2]


def test_16bit_png_rejected(tmp_path):
    path = tmp_path / "deep.png"
    Image.fromarray(np.full((3, 3), 40000, dtype=np.uint16)).save(path)
    with pytest.raises(UnsupportedBitDepthError):
        load_image(path)


def _png_chunk(kind, data):
    return struct.pack(">I", len(data)) + kind + data + struct.pack(">I", zlib.crc32(kind + data))


def test_16bit_rgb_png_rejected(tmp_path):
    ihdr = struct.pack(">IIBBBBB", 1, 1, 16, 2, 0, 0, 0)
    raw = b"\x89PNG\r\n\x1a\n" + _png_chunk(b"IHDR", ihdr)
    raw += _png_chunk(b"IDAT", zlib.compress(b"\x00" + b"\x00" * 6)) + _png_chunk(b"IEND", b"")
    path = tmp_path / "rgb48.png"
    path.write_bytes(raw)
    with pytest.raises(UnsupportedBitDepthError):
        load_image(path)


def test_16bit_netpbm_rejected(tmp_path):
    path = tmp_path / "deep.pgm"
    path.write_bytes(b"P5 1 1 65535\n\x00\x01")
    with pytest.raises(UnsupportedBitDepthError):
        load_image(path)


def test_error_kinds_are_distinct(tmp_path):
    with pytest.raises(ImageIOError) as missing:
        load_image(tmp_path / "nope.png")
    assert type(missing.value) is ImageIOError

    good = tmp_path / "good.png"
    save_image(RasterImage(np.zeros((8, 8, 3), np.uint8)), good)
    truncated = tmp_path / "bad.png"
    truncated.write_bytes(good.read_bytes()[:40])
    with pytest.raises(CorruptImageError):
        load_image(truncated)

    short = tmp_path / "short.ppm"
    short.write_bytes(b"P6 4 4 255\n\x00\x00")
    with pytest.raises(CorruptImageError):
        load_image(short)

    junk = tmp_path / "junk.png"
    junk.write_bytes(b"GIF89a....")
    with pytest.raises(UnsupportedFormatError):
        load_image(junk)


def test_alpha_dropped(tmp_path):
    rgba = np.zeros((2, 2, 4), np.uint8)
    rgba[..., 0] = 200
    rgba[..., 3] = 17
    path = tmp_path / "alpha.png"
    Image.fromarray(rgba, "RGBA").save(path)
    img = load_image(path)
    assert img.space is ColorSpace.RGB
    assert (img.data[..., 0] == 200).all() and img.data.shape == (2, 2, 3)


def test_pgm_header(tmp_path):
    img = RasterImage(np.arange(12, dtype=np.uint8).reshape(3, 4), ColorSpace.GRAY)
    path = tmp_path / "g.pgm"
    save_image(img, path)
    raw = path.read_bytes()
    assert raw.startswith(b"P5 4 3 255\n")
    assert raw[len(b"P5 4 3 255\n") :] == bytes(range(12))


def test_save_ycbcr_rejected(tmp_path):
    img = RasterImage(np.zeros((2, 2, 3), np.uint8), ColorSpace.YCBCR)
    with pytest.raises(InvalidArgumentError):
        save_image(img, tmp_path / "x.png")


def test_save_unknown_extension(tmp_path):
    with pytest.raises(UnsupportedFormatError):
        save_image(RasterImage(np.zeros((2, 2, 3), np.uint8)), tmp_path / "x.jpg")


def test_save_to_missing_directory(tmp_path):
    with pytest.raises(ImageIOError):
        save_image(RasterImage(np.zeros((2, 2, 3), np.uint8)), tmp_path / "no" / "such" / "x.ppm")


images = st.one_of(
    hnp.arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12), st.just(3))).map(RasterImage),
    hnp.arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12))).map(
        lambda a: RasterImage(a, ColorSpace.GRAY)
    ),
)


@settings(max_examples=40, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(images, st.sampled_from([".png", ".ppm", ".pgm"]))
def test_round_trip_is_lossless(tmp_path, img, ext):
    path = tmp_path / f"rt{ext}"
    save_image(img, path)
    assert load_image(path) == img
