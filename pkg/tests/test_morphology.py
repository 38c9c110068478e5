import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from slicmag.errors import InvalidArgumentError
from slicmag.morphology import StructuringElement, conditional_dilate, dilate


def dilate_oracle(f, offsets):
    """Triple loop over pixels and structuring-element cells, edge-clamped reads."""
    h, w = f.shape
    bh, bw = offsets.shape
    oy, ox = (bh - 1) // 2, (bw - 1) // 2
    out = np.zeros_like(f)
    for y in range(h):
        for x in range(w):
            best = None
            for t in range(-oy, oy + 1):
                for s in range(-ox, ox + 1):
                    yy = min(max(y - t, 0), h - 1)
                    xx = min(max(x - s, 0), w - 1)
                    v = int(f[yy, xx]) + int(offsets[t + oy, s + ox])
                    best = v if best is None else max(best, v)
            out[y, x] = min(255, max(0, best))
    return out


def conditional_oracle(b, region, size):
    h, w = b.shape
    r = size // 2
    out = b.copy()
    for y in range(h):
        for x in range(w):
            if region[y, x]:
                continue
            best = 0
            for yy in range(y - r, y + r + 1):
                for xx in range(x - r, x + r + 1):
                    best = max(best, int(b[min(max(yy, 0), h - 1), min(max(xx, 0), w - 1)]))
            out[y, x] = best
    return out


def test_structuring_element_shape():
    se = StructuringElement.flat(5)
    assert (se.width, se.height, se.origin, se.is_flat) == (5, 5, (2, 2), True)
    assert StructuringElement.flat(3, 5).origin == (1, 2)
    with pytest.raises(InvalidArgumentError):
        StructuringElement.flat(4)


def test_zero_plane_stays_zero():
    assert not dilate(np.zeros((5, 5), np.uint8), StructuringElement.flat(3)).any()


def test_single_bright_pixel_grows_to_block():
    f = np.zeros((5, 5), np.uint8)
    f[2, 2] = 255
    out = dilate(f, StructuringElement.flat(3))
    expected = np.zeros((5, 5), np.uint8)
    expected[1:4, 1:4] = 255
    assert np.array_equal(out, expected)


def test_flat_dilation_matches_oracle(rng):
    se = StructuringElement.flat(3)
    for _ in range(100):
        f = rng.integers(0, 256, (6, 6)).astype(np.uint8)
        assert np.array_equal(dilate(f, se), dilate_oracle(f, se.offsets))


def test_profiled_dilation_matches_oracle(rng):
    for _ in range(40):
        offsets = rng.integers(-40, 40, (3, 5))
        f = rng.integers(0, 256, (7, 6)).astype(np.uint8)
        assert np.array_equal(dilate(f, StructuringElement(offsets)), dilate_oracle(f, offsets))


def test_asymmetric_profile_is_reflected():
    # B(s=1, t=0) = 10 means out(x, y) sees f(x - 1, y) + 10
    offsets = np.full((1, 3), -255)
    offsets[0, 2] = 10
    f = np.array([[5, 0, 0, 0]], np.uint8)
    assert dilate(f, StructuringElement(offsets)).tolist() == [[15, 15, 10, 10]]


def test_conditional_all_foreground_is_identity(rng):
    b = rng.integers(0, 256, (8, 8)).astype(np.uint8)
    assert np.array_equal(conditional_dilate(b, np.ones((8, 8), bool)), b)


def test_conditional_spreads_single_value():
    b = np.zeros((9, 9), np.uint8)
    b[4, 4] = 200
    out = conditional_dilate(b, np.zeros((9, 9), bool), StructuringElement.flat(5))
    expected = np.zeros((9, 9), np.uint8)
    expected[2:7, 2:7] = 200
    assert np.array_equal(out, expected)


def test_conditional_matches_oracle(rng):
    for _ in range(100):
        b = rng.integers(0, 256, (8, 8)).astype(np.uint8)
        region = rng.random((8, 8)) < 0.5
        got = conditional_dilate(b, region, StructuringElement.flat(5))
        assert np.array_equal(got, conditional_oracle(b, region, 5))


def test_conditional_rejects_mismatch_and_profile():
    with pytest.raises(InvalidArgumentError):
        conditional_dilate(np.zeros((4, 4), np.uint8), np.zeros((4, 5), bool))
    with pytest.raises(InvalidArgumentError):
        conditional_dilate(np.zeros((4, 4), np.uint8), np.zeros((4, 4), bool), StructuringElement(np.ones((3, 3))))


small = hnp.arrays(np.uint8, st.tuples(st.integers(1, 10), st.integers(1, 10)))
sizes = st.sampled_from([1, 3, 5])


@given(small, sizes)
def test_extensive(f, k):
    assert (dilate(f, StructuringElement.flat(k)) >= f).all()


@given(small, sizes, st.data())
def test_monotone(f, k, data):
    bump = data.draw(hnp.arrays(np.uint8, f.shape))
    g = np.maximum(f, bump)
    se = StructuringElement.flat(k)
    assert (dilate(f, se) <= dilate(g, se)).all()


@settings(max_examples=50)
@given(hnp.arrays(np.uint8, (12, 12)), st.integers(1, 2), st.integers(1, 2))
def test_translation_equivariant_inside(f, dx, dy):
    se = StructuringElement.flat(3)
    shifted = np.roll(np.roll(f, dy, axis=0), dx, axis=1)
    a = np.roll(np.roll(dilate(f, se), dy, axis=0), dx, axis=1)
    b = dilate(shifted, se)
    # compare away from the borders and the wrapped band
    m = 1 + 2
    assert np.array_equal(a[m + dy : -m, m + dx : -m], b[m + dy : -m, m + dx : -m])


@given(small)
def test_unit_element_is_identity(f):
    assert np.array_equal(dilate(f, StructuringElement.flat(1)), f)


@given(small, st.data())
def test_conditional_identity_on_foreground(b, data):
    region = data.draw(hnp.arrays(np.bool_, b.shape))
    out = conditional_dilate(b, region)
    assert np.array_equal(out[region], b[region])
