"""Blind inpainting: recover without transmitted side information.

The receiver first reconstructs the degraded image with the smoothing
quotient, estimates a sparsity pattern from that reconstruction, builds a
degraded sparse image (sparsity projection of the reconstruction, then
re-masked), runs the side-information recovery loop on it with the
estimated pattern, and finally copies the received pixels back over the
result at every known location.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imagecore import apply_mask, as_image, as_mask
from .pocs import RecoveryConfig, RecoveryReport, inpaint_with_side_info, project_sparse
from .sparsity import SparsityPattern, derive_pattern
from .transforms import TransformKind, forward
from .tvrecon import tv_reconstruct

__all__ = ["BlindConfig", "estimate_pattern", "inpaint_blind"]


@dataclass
class BlindConfig:
    kind: TransformKind
    fraction: float
    iterations: int

    def __post_init__(self):
        if not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction {self.fraction} outside [0, 1]")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


def estimate_pattern(corrupted, mask, kind: TransformKind, fraction: float) -> SparsityPattern:
    """Estimate the sparsity pattern from the smoothing-quotient reconstruction."""
    return derive_pattern(forward(tv_reconstruct(corrupted, mask), kind), fraction)


def inpaint_blind(corrupted, mask, config: BlindConfig) -> RecoveryReport:
    """Four-step blind recovery; see the module docstring.

    ``corrupted`` must hold 0 at missing pixels. The output is bit-equal to
    ``corrupted`` at every known pixel.
    """
    img = as_image(corrupted)
    m = as_mask(mask)
    if img.shape != m.shape:
        raise ValueError(f"image shape {img.shape} != mask shape {m.shape}")

    reconstructed = tv_reconstruct(img, m)
    pattern = derive_pattern(forward(reconstructed, config.kind), config.fraction)
    degraded_sparse = apply_mask(project_sparse(reconstructed, pattern), m)
    report = inpaint_with_side_info(degraded_sparse, m, pattern,
                                    RecoveryConfig(config.kind, config.iterations))
    final = np.where(m == 1, img, report.output)
    return RecoveryReport(output=final, iterations_run=report.iterations_run,
                          per_iteration_delta=report.per_iteration_delta)
