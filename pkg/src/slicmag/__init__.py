"""Image enlargement that interpolates SLIC superpixels in isolation to avoid color bleeding."""

from .bench import BenchRun, emit_table, run_benchmark
from .contour import Contour, extract_contours, fill_polygon, scale_contour
from .errors import (
    CorruptImageError,
    ImageIOError,
    InvalidArgumentError,
    SlicmagError,
    UnsupportedBitDepthError,
    UnsupportedFormatError,
)
from .fileio import load_image, save_image
from .image import ColorSpace, RasterImage, pad_replicate, rgb_to_ycbcr, ycbcr_to_rgb
from .metrics import QualityReport, psnr
from .morphology import StructuringElement, conditional_dilate, dilate
from .pipeline import PipelineConfig, PipelineTrace, dump_trace, enlarge, enlarge_baseline
from .resample import InterpMethod, resize_image, resize_plane
from .slic import LabelMap, SlicParams, boundary_overlay, segment_count, slic_segment

__version__ = "0.1.0"
