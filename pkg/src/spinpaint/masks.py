"""Seeded generation of synthetic loss masks: block dropouts and stroke
(text-like) dropouts, plus mask combination.

All randomness comes from a self-contained xorshift64* generator so a given
seed produces the same mask bit for bit, independent of platform or library
versions. The state transition (all arithmetic mod 2**64) is:

    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    output = s * 0x2545F4914F6CDD1D

The all-zero state is a fixed point of the transition, so seed 0 is remapped
to 0x9E3779B97F4A7C15. Bounded draws are ``output % n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imagecore import as_mask

__all__ = [
    "MaskPlacementError",
    "Xorshift64Star",
    "BlockSpec",
    "block_mask",
    "stroke_mask",
    "combine_masks",
]

_MASK64 = (1 << 64) - 1
_ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15
_TRIES_PER_BLOCK = 1000


class MaskPlacementError(RuntimeError):
    """Non-overlapping block placement failed within the retry budget."""


class Xorshift64Star:
    """Deterministic 64-bit generator; see module docstring for the transition."""

    def __init__(self, seed: int):
        self._state = (seed & _MASK64) or _ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        s = self._state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK64
        s ^= s >> 27
        self._state = s
        return (s * 0x2545F4914F6CDD1D) & _MASK64

    def below(self, n: int) -> int:
        """Uniform-ish draw in [0, n)."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % n


@dataclass
class BlockSpec:
    """Parameters for square block losses: side length, block count, RNG seed."""

    block_size: int
    count: int
    seed: int


def block_mask(rows: int, cols: int, spec: BlockSpec) -> np.ndarray:
    """Mask with exactly ``spec.count`` disjoint zeroed squares, fully in bounds.

    Each block draws its top-left corner as (row, column) in that order;
    overlapping draws are retried, up to 1000 tries per block.
    """
    if rows <= 0 or cols <= 0:
        raise ValueError("mask dimensions must be positive")
    if spec.count < 0:
        raise ValueError("block count must be non-negative")
    if spec.count > 0 and not (1 <= spec.block_size <= min(rows, cols)):
        raise ValueError(f"block_size {spec.block_size} does not fit a {rows}x{cols} image")

    mask = np.ones((rows, cols), dtype=np.uint8)
    rng = Xorshift64Star(spec.seed)
    bs = spec.block_size
    placed: list[tuple[int, int]] = []
    for _ in range(spec.count):
        for _attempt in range(_TRIES_PER_BLOCK):
            r = rng.below(rows - bs + 1)
            c = rng.below(cols - bs + 1)
            if all(r + bs <= pr or pr + bs <= r or c + bs <= pc or pc + bs <= c
                   for pr, pc in placed):
                placed.append((r, c))
                mask[r : r + bs, c : c + bs] = 0
                break
        else:
            raise MaskPlacementError(
                f"could not place block {len(placed) + 1} of {spec.count} "
                f"within {_TRIES_PER_BLOCK} tries"
            )
    return mask


def _stamp_stroke(mask: np.ndarray, r0: int, c0: int, r1: int, c1: int, width: int) -> None:
    # Zeroes every pixel whose center lies within width/2 of the segment.
    rows, cols = mask.shape
    half = width / 2.0
    pad = int(math.ceil(half))
    rlo = max(0, min(r0, r1) - pad)
    rhi = min(rows - 1, max(r0, r1) + pad)
    clo = max(0, min(c0, c1) - pad)
    chi = min(cols - 1, max(c0, c1) + pad)
    rr = np.arange(rlo, rhi + 1, dtype=np.float64)[:, None]
    cc = np.arange(clo, chi + 1, dtype=np.float64)[None, :]
    dr = float(r1 - r0)
    dc = float(c1 - c0)
    seg_len2 = dr * dr + dc * dc
    if seg_len2 == 0.0:
        d2 = (rr - r0) ** 2 + (cc - c0) ** 2
    else:
        t = np.clip(((rr - r0) * dr + (cc - c0) * dc) / seg_len2, 0.0, 1.0)
        d2 = (rr - (r0 + t * dr)) ** 2 + (cc - (c0 + t * dc)) ** 2
    hit = d2 <= half * half
    region = mask[rlo : rhi + 1, clo : chi + 1]
    region[hit] = 0


def stroke_mask(rows: int, cols: int, stroke_count: int, stroke_width: int,
                seed: int) -> np.ndarray:
    """Mask with ``stroke_count`` random straight strokes of the given width zeroed.

    Per stroke the endpoints are drawn as r0, c0, r1, c1 in that order. A pixel
    belongs to a stroke when its center is within width/2 (Euclidean) of the
    segment between the endpoints.
    """
    if rows <= 0 or cols <= 0:
        raise ValueError("mask dimensions must be positive")
    if stroke_count < 0:
        raise ValueError("stroke count must be non-negative")
    if stroke_count > 0 and stroke_width < 1:
        raise ValueError("stroke width must be >= 1")

    mask = np.ones((rows, cols), dtype=np.uint8)
    rng = Xorshift64Star(seed)
    for _ in range(stroke_count):
        r0 = rng.below(rows)
        c0 = rng.below(cols)
        r1 = rng.below(rows)
        c1 = rng.below(cols)
        _stamp_stroke(mask, r0, c0, r1, c1, stroke_width)
    return mask


def combine_masks(a, b) -> np.ndarray:
    """Elementwise AND: a pixel is missing if missing in either mask."""
    ma = as_mask(a)
    mb = as_mask(b)
    if ma.shape != mb.shape:
        raise ValueError(f"mask shapes differ: {ma.shape} vs {mb.shape}")
    return ma & mb
