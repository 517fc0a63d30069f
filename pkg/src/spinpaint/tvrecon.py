"""Reconstruction of an image from its irregularly kept pixels as the
quotient of the low-passed masked image over the low-passed mask.

The low-pass filter is the normalized 5-tap cross

    (1/5) * [[0, 1, 0],
             [1, 1, 1],
             [0, 1, 0]]

applied repeatedly (progressive convolution) with replicate boundary
handling. The pass count is the smallest one that makes every entry of the
smoothed mask exceed 1e-6, capped at max(rows, cols) passes. Known pixels
pass through to the output verbatim; the quotient is only trusted at
missing pixels, where it is a convex combination of known values.
"""

from __future__ import annotations

import numpy as np

from .imagecore import as_image, as_mask

__all__ = [
    "InsufficientSupportError",
    "LPF_WINDOW",
    "lowpass",
    "tv_reconstruct",
]

LPF_WINDOW = np.array([[0.0, 1.0, 0.0],
                       [1.0, 1.0, 1.0],
                       [0.0, 1.0, 0.0]]) / 5.0

_SUPPORT_EPS = 1e-6


class InsufficientSupportError(RuntimeError):
    """The smoothed mask never became strictly positive within the pass cap."""


def _smooth(x: np.ndarray) -> np.ndarray:
    p = np.pad(x, 1, mode="edge")
    return (p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:] + p[1:-1, 1:-1]) / 5.0


def lowpass(image, passes: int) -> np.ndarray:
    """Convolve ``passes`` times with LPF_WINDOW, replicate boundary."""
    if passes < 1:
        raise ValueError("passes must be >= 1")
    out = as_image(image)
    for _ in range(passes):
        out = _smooth(out)
    return out


def tv_reconstruct(corrupted, mask) -> np.ndarray:
    """Fill missing pixels with the smoothed-image over smoothed-mask quotient.

    ``corrupted`` is the masked image (missing pixels zero). Both the image
    and the mask are smoothed with the same pass count, chosen as described
    in the module docstring; if the cap is reached with some smoothed-mask
    entry still at or below 1e-6, InsufficientSupportError is raised.
    """
    img = as_image(corrupted)
    m = as_mask(mask)
    if img.shape != m.shape:
        raise ValueError(f"image shape {img.shape} != mask shape {m.shape}")
    if not m.any():
        raise InsufficientSupportError("mask has no known pixels")

    mf = m.astype(np.float64)
    num = img * mf  # re-masked so stray values at missing pixels cannot leak in
    den = mf
    cap = max(img.shape)
    for _ in range(cap):
        num = _smooth(num)
        den = _smooth(den)
        if den.min() > _SUPPORT_EPS:
            break
    else:
        raise InsufficientSupportError(
            f"smoothed mask still has entries <= {_SUPPORT_EPS:g} after {cap} passes"
        )
    return np.where(m == 1, img, num / den)
