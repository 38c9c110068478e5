import numpy as np
import pytest

from slicmag.image import ColorSpace, RasterImage

# criterion lines collected by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def solid(w, h, color):
    data = np.empty((h, w, 3), dtype=np.uint8)
    data[:] = color
    return RasterImage(data, ColorSpace.RGB)


def two_halves(w=64, h=64, left=(255, 0, 0), right=(0, 0, 255)):
    data = np.empty((h, w, 3), dtype=np.uint8)
    data[:, : w // 2] = left
    data[:, w // 2 :] = right
    return RasterImage(data, ColorSpace.RGB)
