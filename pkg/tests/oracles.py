"""Independent reference implementations used to check the library.

Everything here is written from the mathematical definitions: direct
summation for the transforms, scalar loops for convolution and stroke
rasterization, and a standalone copy of the xorshift64* transition. None
of it shares code paths with the package.
"""

import math

import numpy as np


def _dct_scale(k: int, n: int) -> float:
    return math.sqrt(1.0 / n) if k == 0 else math.sqrt(2.0 / n)


def naive_dct2(x: np.ndarray) -> np.ndarray:
    rows, cols = x.shape
    n = np.arange(rows)
    m = np.arange(cols)
    out = np.empty((rows, cols))
    for u in range(rows):
        cr = np.cos(np.pi * (2 * n + 1) * u / (2 * rows))
        for v in range(cols):
            cc = np.cos(np.pi * (2 * m + 1) * v / (2 * cols))
            out[u, v] = _dct_scale(u, rows) * _dct_scale(v, cols) * float(np.sum(x * np.outer(cr, cc)))
    return out


def naive_idct2(coeffs: np.ndarray) -> np.ndarray:
    rows, cols = coeffs.shape
    u = np.arange(rows)
    v = np.arange(cols)
    su = np.array([_dct_scale(k, rows) for k in u])
    sv = np.array([_dct_scale(k, cols) for k in v])
    out = np.empty((rows, cols))
    for n in range(rows):
        cr = su * np.cos(np.pi * (2 * n + 1) * u / (2 * rows))
        for m in range(cols):
            cc = sv * np.cos(np.pi * (2 * m + 1) * v / (2 * cols))
            out[n, m] = float(np.sum(coeffs * np.outer(cr, cc)))
    return out


def naive_dft2(x: np.ndarray) -> np.ndarray:
    rows, cols = x.shape
    n = np.arange(rows)
    m = np.arange(cols)
    out = np.empty((rows, cols), dtype=np.complex128)
    for u in range(rows):
        er = np.exp(-2j * np.pi * u * n / rows)
        for v in range(cols):
            ec = np.exp(-2j * np.pi * v * m / cols)
            out[u, v] = complex(np.sum(x * np.outer(er, ec)))
    return out


def naive_idft2(coeffs: np.ndarray) -> np.ndarray:
    rows, cols = coeffs.shape
    u = np.arange(rows)
    v = np.arange(cols)
    out = np.empty((rows, cols), dtype=np.complex128)
    for n in range(rows):
        er = np.exp(2j * np.pi * n * u / rows)
        for m in range(cols):
            ec = np.exp(2j * np.pi * m * v / cols)
            out[n, m] = complex(np.sum(coeffs * np.outer(er, ec))) / (rows * cols)
    return out


def conv_cross_replicate(x: np.ndarray) -> np.ndarray:
    """One pass of the normalized 5-tap cross, scalar loops, edge clamp."""
    rows, cols = x.shape
    out = np.empty_like(x)
    for r in range(rows):
        for c in range(cols):
            acc = 0.0
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1), (0, 0)):
                rr = min(max(r + dr, 0), rows - 1)
                cc = min(max(c + dc, 0), cols - 1)
                acc += x[rr, cc]
            out[r, c] = acc / 5.0
    return out


class RefXorshift64Star:
    """Standalone copy of the documented generator for replay in tests."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = (seed & self.MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s = (s ^ (s << 25)) & self.MASK
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & self.MASK

    def below(self, n: int) -> int:
        return self.next_u64() % n


def stroke_zero_pixels(rows, cols, segments, width):
    """All (row, col) whose center is within width/2 of any segment; scalar math."""
    half = width / 2.0
    zeros = set()
    for r0, c0, r1, c1 in segments:
        dr = float(r1 - r0)
        dc = float(c1 - c0)
        seg_len2 = dr * dr + dc * dc
        for r in range(rows):
            for c in range(cols):
                if seg_len2 == 0.0:
                    pr, pc = float(r0), float(c0)
                else:
                    t = ((r - r0) * dr + (c - c0) * dc) / seg_len2
                    t = min(1.0, max(0.0, t))
                    pr = r0 + t * dr
                    pc = c0 + t * dc
                if (r - pr) ** 2 + (c - pc) ** 2 <= half * half:
                    zeros.add((r, c))
    return zeros
