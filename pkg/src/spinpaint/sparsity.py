"""Transform-domain sparsity: pattern derivation, the coefficient-zeroing
operator, image sparsification, and the ``.spin`` side-information codec.

A sparsity pattern is the set of transform-domain indices whose coefficients
are forced to zero. Derivation is count-based: the target count is
floor(fraction * rows * cols) and the smallest-magnitude coefficients are
selected, with ties broken toward the larger row-major index. For FFT planes
the selection is done per conjugate orbit {(u, v), ((-u) mod rows, (-v) mod
cols)} so the sparsified image stays real; an orbit is zeroed atomically and
scored by the larger member magnitude, so the realized count can fall short
of the target by one but never exceeds it.

Wire format (``.spin``), all integers big-endian:

    offset  size  field
    0       4     magic "SPIN"
    4       1     version, 0x01
    5       1     kind: 0 = DCT, 1 = FFT
    6       4     rows (uint32)
    10      4     cols (uint32)
    14      8     realized zero count (uint64)
    22      ...   bitset, row-major, MSB-first, zero-padded to a byte

The total length must be exactly 22 + ceil(rows*cols/8) bytes.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .imagecore import as_image
from .transforms import CoeffPlane, TransformKind, forward, inverse

__all__ = [
    "SpinFormatError",
    "SparsityPattern",
    "derive_pattern",
    "apply_sparsity",
    "sparsify",
    "encode_pattern",
    "decode_pattern",
    "save_pattern",
    "load_pattern",
]

_SPIN_MAGIC = b"SPIN"
_SPIN_VERSION = 1
_SPIN_HEADER = struct.Struct(">4sBBIIQ")


class SpinFormatError(ValueError):
    """Malformed or inconsistent .spin side-information data."""


def _target_count(fraction: float, total: int) -> int:
    # floor with a small nudge so that e.g. 0.29 * 100 still counts as 29
    return int(math.floor(fraction * total + 1e-9))


def _mirror_indices(rows: int, cols: int) -> tuple[np.ndarray, np.ndarray]:
    return (-np.arange(rows)) % rows, (-np.arange(cols)) % cols


def _is_conjugate_closed(zero_set: np.ndarray) -> bool:
    ri, ci = _mirror_indices(*zero_set.shape)
    return bool(np.array_equal(zero_set, zero_set[np.ix_(ri, ci)]))


@dataclass(eq=False)
class SparsityPattern:
    """Set of transform indices forced to zero, plus the transform kind.

    ``fraction`` is bookkeeping: the declared sparsity fraction for DCT
    patterns, the realized zero count over the coefficient count for FFT
    and decoded patterns. Equality compares kind, shape, and zero set.
    """

    kind: TransformKind
    zero_set: np.ndarray
    fraction: float

    def __post_init__(self):
        self.zero_set = np.asarray(self.zero_set, dtype=bool)
        if self.zero_set.ndim != 2 or self.zero_set.size == 0:
            raise ValueError(f"zero_set must be a non-empty 2-D array, got shape {self.zero_set.shape}")
        if not 0.0 <= self.fraction <= 1.0:
            raise ValueError(f"fraction {self.fraction} outside [0, 1]")
        if self.zero_count != _target_count(self.fraction, self.zero_set.size):
            raise ValueError(
                f"zero count {self.zero_count} inconsistent with fraction {self.fraction} "
                f"over {self.zero_set.size} coefficients"
            )
        if self.kind is TransformKind.FFT and not _is_conjugate_closed(self.zero_set):
            raise ValueError("FFT zero set is not closed under the conjugate mirror map")

    @property
    def rows(self) -> int:
        return self.zero_set.shape[0]

    @property
    def cols(self) -> int:
        return self.zero_set.shape[1]

    @property
    def zero_count(self) -> int:
        return int(np.count_nonzero(self.zero_set))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsityPattern):
            return NotImplemented
        return (self.kind is other.kind
                and self.zero_set.shape == other.zero_set.shape
                and bool(np.array_equal(self.zero_set, other.zero_set)))


def derive_pattern(coeffs: CoeffPlane, fraction: float) -> SparsityPattern:
    """Select the floor(fraction * N) smallest-magnitude indices to zero.

    Ordering is by (magnitude ascending, row-major index descending), so
    equal magnitudes zero the larger index first. FFT planes are handled
    per conjugate orbit as described in the module docstring.
    """
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"fraction {fraction} outside [0, 1]")
    rows, cols = coeffs.rows, coeffs.cols
    total = rows * cols
    target = _target_count(fraction, total)
    mags = np.abs(coeffs.values).ravel()
    zero_flat = np.zeros(total, dtype=bool)

    if coeffs.kind is TransformKind.DCT:
        order = np.lexsort((-np.arange(total), mags))
        zero_flat[order[:target]] = True
        return SparsityPattern(coeffs.kind, zero_flat.reshape(rows, cols), fraction)

    ri, ci = _mirror_indices(rows, cols)
    mirror = (ri[:, None] * cols + ci[None, :]).ravel()
    idx = np.arange(total)
    reps = idx[idx <= mirror[idx]]  # one representative per conjugate orbit
    orbit_mags = np.maximum(mags[reps], mags[mirror[reps]])
    order = np.lexsort((-reps, orbit_mags))
    budget = target
    for rep in reps[order]:
        size = 1 if mirror[rep] == rep else 2
        if size <= budget:
            zero_flat[rep] = True
            zero_flat[mirror[rep]] = True
            budget -= size
            if budget == 0:
                break
    realized = target - budget
    return SparsityPattern(coeffs.kind, zero_flat.reshape(rows, cols), realized / total)


def apply_sparsity(coeffs: CoeffPlane, pattern: SparsityPattern) -> CoeffPlane:
    """Zero the coefficients on the pattern, leave the rest untouched."""
    if coeffs.kind is not pattern.kind:
        raise ValueError(f"kind mismatch: plane is {coeffs.kind.name}, pattern is {pattern.kind.name}")
    if (coeffs.rows, coeffs.cols) != (pattern.rows, pattern.cols):
        raise ValueError(
            f"dimension mismatch: plane {coeffs.rows}x{coeffs.cols}, "
            f"pattern {pattern.rows}x{pattern.cols}"
        )
    out = coeffs.values.copy()
    out[pattern.zero_set] = 0
    return CoeffPlane(coeffs.kind, out)


def sparsify(image, kind: TransformKind, fraction: float) -> tuple[np.ndarray, SparsityPattern]:
    """Return the sparse image (inverse of the zeroed transform) and its pattern."""
    img = as_image(image)
    plane = forward(img, kind)
    pattern = derive_pattern(plane, fraction)
    sparse = inverse(apply_sparsity(plane, pattern))
    return sparse, pattern


def encode_pattern(pattern: SparsityPattern) -> bytes:
    """Serialize to the .spin wire format (see module docstring)."""
    header = _SPIN_HEADER.pack(
        _SPIN_MAGIC,
        _SPIN_VERSION,
        pattern.kind.value,
        pattern.rows,
        pattern.cols,
        pattern.zero_count,
    )
    bits = np.packbits(pattern.zero_set.ravel())
    return header + bits.tobytes()


def decode_pattern(data: bytes) -> SparsityPattern:
    """Parse and validate a .spin byte stream.

    Raises SpinFormatError for bad magic or version, unknown kind, truncated
    or oversized payload, set padding bits, a zero-count that disagrees with
    the bitset, or an FFT zero set that is not conjugate-closed.
    """
    if len(data) < _SPIN_HEADER.size:
        raise SpinFormatError(f"truncated header: {len(data)} bytes")
    magic, version, kind_byte, rows, cols, count = _SPIN_HEADER.unpack_from(data)
    if magic != _SPIN_MAGIC:
        raise SpinFormatError(f"bad magic {magic!r}")
    if version != _SPIN_VERSION:
        raise SpinFormatError(f"unsupported version {version}")
    try:
        kind = TransformKind(kind_byte)
    except ValueError:
        raise SpinFormatError(f"unknown transform kind byte {kind_byte}") from None
    if rows == 0 or cols == 0:
        raise SpinFormatError(f"invalid dimensions {rows}x{cols}")
    total = rows * cols
    expected = _SPIN_HEADER.size + (total + 7) // 8
    if len(data) != expected:
        raise SpinFormatError(f"payload length {len(data)} != expected {expected}")
    if count > total:
        raise SpinFormatError(f"zero count {count} exceeds {total} coefficients")

    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8, offset=_SPIN_HEADER.size))
    if bits[total:].any():
        raise SpinFormatError("nonzero padding bits")
    zero_set = bits[:total].astype(bool).reshape(rows, cols)
    if int(zero_set.sum()) != count:
        raise SpinFormatError(f"zero count {count} disagrees with bitset popcount {int(zero_set.sum())}")
    if kind is TransformKind.FFT and not _is_conjugate_closed(zero_set):
        raise SpinFormatError("FFT zero set is not closed under the conjugate mirror map")
    return SparsityPattern(kind, zero_set, count / total)


def save_pattern(pattern: SparsityPattern, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pattern(pattern))


def load_pattern(path) -> SparsityPattern:
    with open(path, "rb") as fh:
        return decode_pattern(fh.read())
