"""
Four-arm PSNR table
===================

Runs bicubic, bilinear and their segment-wise variants on every image of a
directory and prints the CSV table.  Pass the directory as the first
argument (Set 5, for instance); each image is center-cropped, resized to
256x256 as ground truth, reduced to 64x64 and enlarged back.
"""

import sys

from slicmag import PipelineConfig, emit_table, run_benchmark

if len(sys.argv) < 2:
    sys.exit("usage: python plot_benchmark.py IMAGE_DIR")

run = run_benchmark(sys.argv[1], PipelineConfig())
print(emit_table(run, "markdown"))
print("average gain over the plain arms (dB):", {k: round(v, 3) for k, v in run.deltas().items()})
