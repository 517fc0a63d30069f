"""Grayscale image and loss-mask primitives shared by every other module.

An image is a 2-D float64 array. Values are nominally 0..255 but may leave
that range while an iterative algorithm is running; quantization to 8-bit
happens only in :func:`write_pgm`. A mask is a 2-D uint8 array with
1 = known pixel and 0 = missing pixel.

File format is PGM, maxval 255, binary (P5) or ASCII (P2). Mask files use
the same format with the convention 0 = missing, any nonzero = known;
:func:`write_mask` stores known pixels as 255 so masks are viewable.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "PgmFormatError",
    "as_image",
    "as_mask",
    "apply_mask",
    "read_pgm",
    "write_pgm",
    "read_mask",
    "write_mask",
]

_WHITESPACE = b" \t\r\n\x0b\x0c"


class PgmFormatError(ValueError):
    """Malformed or unsupported PGM data."""


def as_image(data) -> np.ndarray:
    """Coerce to a 2-D float64 array and validate finiteness."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"image must be a non-empty 2-D array, got shape {img.shape}")
    if not np.all(np.isfinite(img)):
        raise ValueError("image contains NaN or Inf")
    return img


def as_mask(data) -> np.ndarray:
    """Coerce to a 2-D uint8 array of {0,1} entries."""
    mask = np.asarray(data)
    if mask.ndim != 2 or mask.size == 0:
        raise ValueError(f"mask must be a non-empty 2-D array, got shape {mask.shape}")
    if not np.isin(mask, (0, 1)).all():
        raise ValueError("mask entries must be 0 or 1")
    return mask.astype(np.uint8)


def apply_mask(image, mask) -> np.ndarray:
    """Pixel-wise product of image and mask: keeps known pixels, zeros missing ones."""
    img = as_image(image)
    m = as_mask(mask)
    if img.shape != m.shape:
        raise ValueError(f"image shape {img.shape} != mask shape {m.shape}")
    return img * m


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skips whitespace and '#' comments per the PNM header grammar.
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise PgmFormatError("unterminated comment in header")
            pos = nl + 1
        else:
            break
    if pos >= n:
        raise PgmFormatError("truncated header")
    end = pos
    while end < n and data[end : end + 1] not in _WHITESPACE:
        end += 1
    return data[pos:end], end


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, pos = _next_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise PgmFormatError(f"bad {what} field: {token!r}") from None
    return value, pos


def read_pgm(path) -> np.ndarray:
    """Read a binary (P5) or ASCII (P2) PGM file with maxval 255.

    Returns the pixels as a float64 image. Raises PgmFormatError for any
    malformed header, wrong maxval, or truncated raster.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _next_token(data, 0)
    if magic not in (b"P5", b"P2"):
        raise PgmFormatError(f"not a PGM file (magic {magic!r})")
    cols, pos = _header_int(data, pos, "width")
    rows, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if rows <= 0 or cols <= 0:
        raise PgmFormatError(f"invalid dimensions {cols}x{rows}")
    if maxval != 255:
        raise PgmFormatError(f"unsupported maxval {maxval} (must be 255)")
    count = rows * cols

    if magic == b"P5":
        if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
            raise PgmFormatError("missing whitespace after maxval")
        pos += 1  # exactly one whitespace byte separates header and raster
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise PgmFormatError(f"truncated raster: expected {count} bytes, got {len(raster)}")
        trailing = data[pos + count :]
        if trailing.strip(_WHITESPACE):
            raise PgmFormatError("trailing data after raster")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        while True:
            try:
                token, pos = _next_token(data, pos)
            except PgmFormatError:
                break
            try:
                values.append(int(token))
            except ValueError:
                raise PgmFormatError(f"bad sample value: {token!r}") from None
        if len(values) != count:
            raise PgmFormatError(f"expected {count} samples, got {len(values)}")
        pixels = np.array(values)
        if pixels.min() < 0 or pixels.max() > 255:
            raise PgmFormatError("sample value out of range 0..255")

    return pixels.reshape(rows, cols).astype(np.float64)


def write_pgm(image, path) -> None:
    """Write a binary (P5) PGM with maxval 255.

    Each pixel is rounded half-away-from-zero, then clamped to [0, 255].
    """
    img = as_image(image)
    rounded = np.sign(img) * np.floor(np.abs(img) + 0.5)
    quantized = np.clip(rounded, 0, 255).astype(np.uint8)
    rows, cols = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (cols, rows))
        fh.write(quantized.tobytes())


def read_mask(path) -> np.ndarray:
    """Read a mask PGM: 0 = missing, any nonzero = known."""
    return (read_pgm(path) != 0).astype(np.uint8)


def write_mask(mask, path) -> None:
    """Write a mask PGM with known pixels stored as 255."""
    write_pgm(as_mask(mask) * 255.0, path)
