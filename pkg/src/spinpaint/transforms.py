"""2-D transform layer used by the sparsity machinery.

Two transform kinds with fixed conventions:

- DCT: separable orthonormal 2-D DCT-II forward, orthonormal DCT-III
  inverse. The pair is an isometry, so spatial and coefficient norms match.
- FFT: standard unnormalized 2-D DFT forward, inverse scaled by
  1/(rows*cols). The inverse returns the real part and rejects spectra whose
  inverse carries an imaginary residue above 1e-6 (i.e. input that is not
  conjugate-symmetric).

Arbitrary (non power-of-two) sizes are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.fft

from .imagecore import as_image

__all__ = [
    "TransformKind",
    "CoeffPlane",
    "SymmetryError",
    "MAX_IMAG_RESIDUE",
    "forward",
    "inverse",
]

MAX_IMAG_RESIDUE = 1e-6


class SymmetryError(ValueError):
    """FFT inverse input was not conjugate-symmetric within tolerance."""


class TransformKind(Enum):
    """Transform selector; the value doubles as the on-disk kind byte."""

    DCT = 0
    FFT = 1

    @classmethod
    def from_name(cls, name: str) -> "TransformKind":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown transform kind {name!r} (use dct or fft)") from None


@dataclass
class CoeffPlane:
    """A 2-D plane of transform coefficients: real for DCT, complex for FFT."""

    kind: TransformKind
    values: np.ndarray

    def __post_init__(self):
        dtype = np.float64 if self.kind is TransformKind.DCT else np.complex128
        self.values = np.asarray(self.values, dtype=dtype)
        if self.values.ndim != 2 or self.values.size == 0:
            raise ValueError(f"coefficients must be a non-empty 2-D array, got shape {self.values.shape}")

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]


def forward(image, kind: TransformKind) -> CoeffPlane:
    """Forward 2-D transform of a real image."""
    img = as_image(image)
    if kind is TransformKind.DCT:
        return CoeffPlane(kind, scipy.fft.dctn(img, type=2, norm="ortho"))
    return CoeffPlane(kind, np.fft.fft2(img))


def inverse(coeffs: CoeffPlane) -> np.ndarray:
    """Inverse 2-D transform back to a real image.

    For FFT input the imaginary residue of the inverse must stay below
    1e-6 in absolute value, otherwise SymmetryError is raised.
    """
    if coeffs.kind is TransformKind.DCT:
        return scipy.fft.idctn(coeffs.values, type=2, norm="ortho")
    out = np.fft.ifft2(coeffs.values)
    residue = float(np.abs(out.imag).max())
    if residue > MAX_IMAG_RESIDUE:
        raise SymmetryError(
            f"inverse FFT imaginary residue {residue:.3e} exceeds {MAX_IMAG_RESIDUE:.0e}; "
            "spectrum is not conjugate-symmetric"
        )
    return np.ascontiguousarray(out.real)
