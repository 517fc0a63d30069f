"""Quantitative evaluation: PSNR and sparsity-pattern error rates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imagecore import as_image
from .sparsity import SparsityPattern

__all__ = ["PatternError", "psnr", "pattern_error"]


@dataclass
class PatternError:
    """Pattern mismatch rates, both as percentages of all coefficients."""

    miss_detection_pct: float
    false_alarm_pct: float


def psnr(a, b) -> float:
    """10*log10(255^2 / MSE) over all pixels; identical images give inf."""
    ia = as_image(a)
    ib = as_image(b)
    if ia.shape != ib.shape:
        raise ValueError(f"image shapes differ: {ia.shape} vs {ib.shape}")
    mse = float(np.mean((ia - ib) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)


def pattern_error(estimated: SparsityPattern, reference: SparsityPattern) -> PatternError:
    """Miss-detection = reference indices the estimate missed; false alarm =
    estimated indices not in the reference. Both normalized by the total
    coefficient count."""
    if estimated.kind is not reference.kind:
        raise ValueError(f"kind mismatch: {estimated.kind.name} vs {reference.kind.name}")
    if estimated.zero_set.shape != reference.zero_set.shape:
        raise ValueError(
            f"dimension mismatch: {estimated.zero_set.shape} vs {reference.zero_set.shape}"
        )
    total = reference.zero_set.size
    miss = int(np.count_nonzero(reference.zero_set & ~estimated.zero_set))
    false = int(np.count_nonzero(estimated.zero_set & ~reference.zero_set))
    return PatternError(miss_detection_pct=100.0 * miss / total,
                        false_alarm_pct=100.0 * false / total)
