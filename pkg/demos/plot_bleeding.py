"""
Counting color bleeding at a chromatic edge
===========================================

Interpolating across a red/blue border invents purple pixels.  Here we count
pixels whose chroma is more than 8 codes away from both source colors, for
bicubic and for the segment-wise pipeline, on a straight and a tilted edge.
"""

import numpy as np

from slicmag import RasterImage, enlarge, enlarge_baseline, rgb_to_ycbcr

red, blue = np.array([220, 30, 30]), np.array([30, 40, 210])


def chroma(rgb):
    return rgb_to_ycbcr(RasterImage(rgb.reshape(1, 1, 3).astype(np.uint8))).data[0, 0, 1:].astype(float)


def bleeding(img):
    cc = rgb_to_ycbcr(img).data[..., 1:].astype(float)
    far = [np.linalg.norm(cc - chroma(c), axis=-1) > 8 for c in (red, blue)]
    return int((far[0] & far[1]).sum())


ys, xs = np.mgrid[0:64, 0:64]
for name, side in (("vertical", xs < 32), ("tilted", xs + 0.4 * ys < 44)):
    lr = RasterImage(np.where(side[..., None], red, blue).astype(np.uint8))
    print(f"{name:>8} edge: bicubic {bleeding(enlarge_baseline(lr, 4)):5d}"
          f"   segment-wise {bleeding(enlarge(lr)[0]):5d}")
