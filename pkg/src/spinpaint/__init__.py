"""Grayscale image inpainting via transform-domain sparsity.

The sender zeroes the smallest transform coefficients of an image and ships
the resulting zero pattern as side information; the receiver recovers
missing pixels by alternating projections between the sparsity constraint
and the known-pixel constraint. A blind variant estimates the pattern from
a smoothing-quotient reconstruction when no side information is available.
"""

from .blindpipe import BlindConfig, estimate_pattern, inpaint_blind
from .imagecore import (
    PgmFormatError,
    apply_mask,
    read_mask,
    read_pgm,
    write_mask,
    write_pgm,
)
from .masks import (
    BlockSpec,
    MaskPlacementError,
    block_mask,
    combine_masks,
    stroke_mask,
)
from .metrics import PatternError, pattern_error, psnr
from .pocs import (
    RecoveryConfig,
    RecoveryReport,
    inpaint_with_side_info,
    project_data,
    project_sparse,
)
from .sparsity import (
    SparsityPattern,
    SpinFormatError,
    apply_sparsity,
    decode_pattern,
    derive_pattern,
    encode_pattern,
    load_pattern,
    save_pattern,
    sparsify,
)
from .transforms import CoeffPlane, SymmetryError, TransformKind, forward, inverse
from .tvrecon import InsufficientSupportError, LPF_WINDOW, lowpass, tv_reconstruct

__version__ = "0.1.0"

__all__ = [
    "BlindConfig",
    "BlockSpec",
    "CoeffPlane",
    "InsufficientSupportError",
    "LPF_WINDOW",
    "MaskPlacementError",
    "PatternError",
    "PgmFormatError",
    "RecoveryConfig",
    "RecoveryReport",
    "SparsityPattern",
    "SpinFormatError",
    "SymmetryError",
    "TransformKind",
    "apply_mask",
    "apply_sparsity",
    "block_mask",
    "combine_masks",
    "decode_pattern",
    "derive_pattern",
    "encode_pattern",
    "estimate_pattern",
    "forward",
    "inpaint_blind",
    "inpaint_with_side_info",
    "inverse",
    "load_pattern",
    "lowpass",
    "pattern_error",
    "project_data",
    "project_sparse",
    "psnr",
    "read_mask",
    "read_pgm",
    "save_pattern",
    "sparsify",
    "stroke_mask",
    "tv_reconstruct",
    "write_mask",
    "write_pgm",
]
