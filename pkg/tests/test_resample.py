import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from slicmag.image import ColorSpace, RasterImage
from slicmag.resample import InterpMethod, cubic_kernel, resize_image, resize_plane

M = InterpMethod


def rnd(v):
    return int(math.floor(abs(v) + 0.5)) * (1 if v >= 0 else -1)


def clamp8(v):
    return min(255, max(0, rnd(v)))


def src_coord(i, n_in, n_out):
    return (i + 0.5) * n_in / n_out - 0.5


def bilinear_reference(p, out_w, out_h):
    """Per-pixel evaluation of the four-neighbor weighted average."""
    h, w = p.shape
    out = np.zeros((out_h, out_w), dtype=np.uint8)
    for oy in range(out_h):
        sy = src_coord(oy, h, out_h)
        y0 = math.floor(sy)
        fy = sy - y0
        ya, yb = min(max(y0, 0), h - 1), min(max(y0 + 1, 0), h - 1)
        for ox in range(out_w):
            sx = src_coord(ox, w, out_w)
            x0 = math.floor(sx)
            fx = sx - x0
            xa, xb = min(max(x0, 0), w - 1), min(max(x0 + 1, 0), w - 1)
            top = (1 - fx) * float(p[ya, xa]) + fx * float(p[ya, xb])
            bot = (1 - fx) * float(p[yb, xa]) + fx * float(p[yb, xb])
            out[oy, ox] = clamp8((1 - fy) * top + fy * bot)
    return out


def keys(t, a=-0.5):
    t = abs(t)
    if t <= 1:
        return (a + 2) * t**3 - (a + 3) * t**2 + 1
    if t < 2:
        return a * t**3 - 5 * a * t**2 + 8 * a * t - 4 * a
    return 0.0


def bicubic_reference(p, out_w, out_h):
    """Direct 16-tap sum per output pixel."""
    h, w = p.shape
    out = np.zeros((out_h, out_w), dtype=np.uint8)
    for oy in range(out_h):
        sy = src_coord(oy, h, out_h)
        y0 = math.floor(sy)
        for ox in range(out_w):
            sx = src_coord(ox, w, out_w)
            x0 = math.floor(sx)
            acc = 0.0
            for j in range(-1, 3):
                for i in range(-1, 3):
                    yy = min(max(y0 + j, 0), h - 1)
                    xx = min(max(x0 + i, 0), w - 1)
                    acc += keys(sy - (y0 + j)) * keys(sx - (x0 + i)) * float(p[yy, xx])
            out[oy, ox] = clamp8(acc)
    return out


@pytest.mark.parametrize("method", list(M))
@pytest.mark.parametrize("size", [(1, 1), (3, 7), (16, 5), (40, 40)])
def test_constant_plane_stays_constant(method, size):
    p = np.full((6, 5), 77, np.uint8)
    out = resize_plane(p, *size, method)
    assert out.shape == (size[1], size[0])
    assert (out == 77).all()


def test_bilinear_two_samples():
    p = np.array([[0, 100]], np.uint8)
    assert resize_plane(p, 4, 1, M.BILINEAR).tolist() == [[0, 25, 75, 100]]
    # with three outputs the middle one lands exactly half-way between the sources
    assert resize_plane(p, 3, 1, M.BILINEAR)[0, 1] == 50


def test_bilinear_center_of_four():
    p = np.array([[0, 0], [0, 100]], np.uint8)
    assert resize_plane(p, 1, 1, M.BILINEAR)[0, 0] == 25


def test_bicubic_linear_ramp_times_two():
    ramp = np.tile((np.arange(16) * 12).astype(np.uint8), (4, 1))
    out = resize_plane(ramp, 32, 8, M.BICUBIC).astype(int)
    xs = (np.arange(32) + 0.5) / 2 - 0.5
    expected = 12 * xs
    # taps of samples with 1 <= x_src <= w - 3 are all inside the source
    interior = (xs >= 1) & (xs <= 13)
    assert np.abs(out[:, interior] - expected[interior]).max() <= 1


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 255), st.integers(-8, 8), st.integers(-8, 8),
    st.integers(6, 10), st.integers(6, 10), st.integers(2, 4),
)
def test_bicubic_reproduces_bilinear_functions(a, b, c, w, h, s):
    ys, xs = np.mgrid[0:h, 0:w]
    f = a + b * xs + c * ys
    assume(f.min() >= 0 and f.max() <= 255)
    out = resize_plane(f.astype(np.uint8), w * s, h * s, M.BICUBIC).astype(float)
    sx = (np.arange(w * s) + 0.5) / s - 0.5
    sy = (np.arange(h * s) + 0.5) / s - 0.5
    # only samples whose 4x4 taps are all inside the source; edge clamping bends the ramp
    ok_x = (sx >= 1) & (sx <= w - 3)
    ok_y = (sy >= 1) & (sy <= h - 3)
    want = a + b * sx[None, :] + c * sy[:, None]
    sel = np.ix_(ok_y, ok_x)
    assert np.abs(out[sel] - want[sel]).max() <= 1


def test_kernel_shape():
    assert cubic_kernel(0) == 1
    assert cubic_kernel(1) == 0 and cubic_kernel(2) == 0 and cubic_kernel(2.5) == 0
    t = np.linspace(0, 1, 11)
    total = sum(cubic_kernel(t + k) for k in (-2, -1, 0, 1))
    assert np.allclose(total, 1.0)


@pytest.mark.parametrize("scale", [2, 3, 4])
def test_bilinear_matches_reference(rng, scale):
    for _ in range(15):
        h, w = rng.integers(1, 9, size=2)
        p = rng.integers(0, 256, (h, w)).astype(np.uint8)
        got = resize_plane(p, w * scale, h * scale, M.BILINEAR)
        assert np.array_equal(got, bilinear_reference(p, w * scale, h * scale))


@pytest.mark.parametrize("out", [(16, 16), (5, 3), (3, 11)])
def test_bicubic_matches_reference(rng, out):
    p = rng.integers(0, 256, (7, 6)).astype(np.uint8)
    assert np.array_equal(resize_plane(p, *out, M.BICUBIC), bicubic_reference(p, *out))


@given(hnp.arrays(np.uint8, st.tuples(st.integers(1, 8), st.integers(1, 8))), st.integers(1, 20), st.integers(1, 20))
def test_nearest_introduces_no_new_values(p, ow, oh):
    out = resize_plane(p, ow, oh, M.NEAREST)
    assert set(np.unique(out)) <= set(np.unique(p))


@settings(max_examples=50)
@given(hnp.arrays(np.uint8, st.tuples(st.integers(2, 8), st.integers(2, 8))), st.integers(2, 4))
def test_bilinear_within_local_range(p, s):
    h, w = p.shape
    out = resize_plane(p, w * s, h * s, M.BILINEAR)
    assert out.min() >= p.min() and out.max() <= p.max()


def test_nearest_identity_is_exact(rng):
    data = rng.integers(0, 256, (9, 13, 3)).astype(np.uint8)
    img = RasterImage(data)
    assert resize_image(img, 13, 9, M.NEAREST) == img


def test_resize_image_64_256_round_trip_sizes(rng):
    img = RasterImage(rng.integers(0, 256, (64, 64, 3)).astype(np.uint8))
    up = resize_image(img, 256, 256, M.BICUBIC)
    assert up.size == (256, 256) and up.space is ColorSpace.RGB
    down = resize_image(up, 64, 64, M.BICUBIC)
    assert down.size == (64, 64)


def test_bicubic_overshoot_is_clamped():
    p = np.array([[0, 0, 255, 255]], np.uint8)
    out = resize_plane(p, 16, 1, M.BICUBIC).astype(int)
    raw = bicubic_reference(p, 16, 1).astype(int)
    assert out.min() >= 0 and out.max() <= 255
    assert np.array_equal(out, raw)


def test_parse_and_bad_size():
    assert InterpMethod.parse("Bicubic") is M.BICUBIC
    with pytest.raises(ValueError):
        InterpMethod.parse("lanczos")
    with pytest.raises(ValueError):
        resize_plane(np.zeros((2, 2), np.uint8), 0, 3)
