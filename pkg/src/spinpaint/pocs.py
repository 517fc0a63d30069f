"""Alternating projections between the transform-sparsity constraint set and
the spatial data-consistency set.

One recovery iteration applies the sparsity projection first and the data
projection second, so every iterate (and the final output) satisfies the
data constraint exactly. There is no clamping to [0, 255] inside the loop;
range enforcement happens only when an image is written to disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .imagecore import as_image, as_mask
from .sparsity import SparsityPattern, apply_sparsity
from .transforms import TransformKind, forward, inverse

__all__ = [
    "RecoveryConfig",
    "RecoveryReport",
    "project_sparse",
    "project_data",
    "inpaint_with_side_info",
]


@dataclass
class RecoveryConfig:
    """Recovery-loop parameters.

    ``iterations`` 0 means "return the input unchanged". The optional
    early stop ends the loop once the max-abs change of an iteration drops
    below ``early_stop_tol``; it is off by default so iteration counts are
    exactly reproducible.
    """

    kind: TransformKind
    iterations: int
    residual_log: bool = False
    early_stop: bool = False
    early_stop_tol: float = 1e-6

    def __post_init__(self):
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")


@dataclass
class RecoveryReport:
    output: np.ndarray
    iterations_run: int
    per_iteration_delta: list[float] | None = field(default=None)


def project_sparse(image, pattern: SparsityPattern) -> np.ndarray:
    """Projection onto the sparsity set: transform, zero the pattern, invert."""
    img = as_image(image)
    if img.shape != (pattern.rows, pattern.cols):
        raise ValueError(f"image shape {img.shape} != pattern {pattern.rows}x{pattern.cols}")
    return inverse(apply_sparsity(forward(img, pattern.kind), pattern))


def project_data(image, known, mask) -> np.ndarray:
    """Projection onto the data set: known value where mask=1, input elsewhere."""
    img = as_image(image)
    kn = as_image(known)
    m = as_mask(mask)
    if not (img.shape == kn.shape == m.shape):
        raise ValueError(f"shape mismatch: image {img.shape}, known {kn.shape}, mask {m.shape}")
    return np.where(m == 1, kn, img)


def inpaint_with_side_info(corrupted, mask, pattern: SparsityPattern,
                           config: RecoveryConfig) -> RecoveryReport:
    """Recover missing pixels by alternating the two projections.

    ``corrupted`` must hold 0 at missing pixels (the masked received image);
    its mask=1 pixels are the data constraint. Starting from the corrupted
    image, each iteration applies the sparsity projection then the data
    projection, for ``config.iterations`` rounds.
    """
    img = as_image(corrupted)
    m = as_mask(mask)
    if img.shape != m.shape:
        raise ValueError(f"image shape {img.shape} != mask shape {m.shape}")
    if img.shape != (pattern.rows, pattern.cols):
        raise ValueError(f"image shape {img.shape} != pattern {pattern.rows}x{pattern.cols}")
    if config.kind is not pattern.kind:
        raise ValueError(f"config kind {config.kind.name} != pattern kind {pattern.kind.name}")

    x = img.copy()
    deltas: list[float] | None = [] if config.residual_log else None
    track_delta = config.residual_log or config.early_stop
    iterations_run = 0
    for _ in range(config.iterations):
        nxt = project_data(project_sparse(x, pattern), img, m)
        iterations_run += 1
        if track_delta:
            delta = float(np.abs(nxt - x).max())
            if deltas is not None:
                deltas.append(delta)
            x = nxt
            if config.early_stop and delta < config.early_stop_tol:
                break
        else:
            x = nxt
    return RecoveryReport(output=x, iterations_run=iterations_run, per_iteration_delta=deltas)
