"""Grayscale image handling.

Covers the whole path from PGM bytes to a network-ready vector: parsing,
full-range intensity rescaling, and the linear map onto [-1, +1). The inverse
map plus a PGM writer turn network outputs back into images.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    FormatError,
    TruncationError,
    UnsupportedError,
    ValidationError,
)


@dataclass
class GrayImage:
    """Row-major raster of real-valued grayscale intensities.

    Intensities stay floating point through the pipeline; quantization to
    8-bit happens only when writing a PGM.
    """

    width: int
    height: int
    intensities: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValidationError(f"image dimensions must be positive, got {self.width}x{self.height}")
        self.intensities = np.asarray(self.intensities, dtype=np.float64).reshape(-1)
        expected = self.width * self.height
        if self.intensities.size != expected:
            raise ValidationError(
                f"expected {expected} intensities for {self.width}x{self.height}, got {self.intensities.size}"
            )
        if not np.all(np.isfinite(self.intensities)):
            raise ValidationError("intensities must be finite")


_WHITESPACE = b" \t\r\n\v\f"


class _Tokens:
    """Whitespace-separated header tokens; '#' starts a comment to end of line."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def next(self) -> bytes:
        data, n = self.data, len(self.data)
        i = self.pos
        while i < n:
            c = data[i]
            if c in _WHITESPACE:
                i += 1
            elif c == ord("#"):
                while i < n and data[i] != ord("\n"):
                    i += 1
            else:
                break
        if i >= n:
            raise TruncationError("unexpected end of PGM data")
        start = i
        while i < n and data[i] not in _WHITESPACE and data[i] != ord("#"):
            i += 1
        self.pos = i
        return data[start:i]


def _int_token(token: bytes, name: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"bad PGM {name} token {token!r}") from None


def load_pgm(data: bytes) -> GrayImage:
    """Decode an ASCII ("P2") or binary ("P5") PGM image.

    Raw samples are multiplied by 255/maxval, so the decoded image always
    uses the [0, 255] scale whatever the file's declared maximum. Only
    maxval values in [1, 255] (single-byte binary samples) are supported.
    """
    tokens = _Tokens(data)
    try:
        magic = tokens.next()
    except TruncationError:
        raise FormatError("empty PGM data") from None
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"not a PGM image (magic {magic!r}, expected P2 or P5)")
    try:
        width = _int_token(tokens.next(), "width")
        height = _int_token(tokens.next(), "height")
        maxval = _int_token(tokens.next(), "maxval")
    except TruncationError:
        raise TruncationError("incomplete PGM header") from None
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise UnsupportedError(f"maxval {maxval} outside the supported range [1, 255]")

    count = width * height
    if magic == b"P2":
        raw = np.empty(count, dtype=np.float64)
        for k in range(count):
            try:
                token = tokens.next()
            except TruncationError:
                raise TruncationError(f"PGM declares {count} pixels, found only {k}") from None
            raw[k] = _int_token(token, "sample")
        try:
            tokens.next()
        except TruncationError:
            pass
        else:
            raise TruncationError(f"PGM declares {count} pixels but carries extra samples")
    else:
        pos = tokens.pos
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise FormatError("P5 header must be followed by a single whitespace byte")
        raster = data[pos + 1:]
        if len(raster) != count:
            raise TruncationError(f"PGM declares {count} pixels, raster holds {len(raster)} bytes")
        raw = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)

    if np.any(raw < 0) or np.any(raw > maxval):
        raise FormatError(f"PGM sample outside [0, {maxval}]")
    return GrayImage(width, height, raw * (255.0 / maxval))


def write_pgm(img: GrayImage) -> bytes:
    """Encode as binary PGM (P5, maxval 255).

    Intensities are quantized by rounding (ties away from zero, i.e. up)
    and clamping to [0, 255].
    """
    q = np.clip(np.floor(img.intensities + 0.5), 0.0, 255.0).astype(np.uint8)
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + q.tobytes()


def rescale_intensities(img: GrayImage) -> GrayImage:
    """Stretch intensities so the darkest pixel maps to 0 and the brightest to 255.

    A constant image has no contrast to stretch; every pixel becomes 128 so
    that the subsequent unit mapping yields an all-zero vector.
    """
    lo = float(img.intensities.min())
    hi = float(img.intensities.max())
    if hi == lo:
        out = np.full_like(img.intensities, 128.0)
    else:
        out = (img.intensities - lo) * 255.0 / (hi - lo)
        np.clip(out, 0.0, 255.0, out=out)  # guard endpoints against rounding
    return GrayImage(img.width, img.height, out)


def map_to_unit_range(img: GrayImage) -> np.ndarray:
    """Map [0, 255] intensities linearly into the network input domain.

    0 maps to -1, 128 to 0, 255 to 127/128. Intensities outside [0, 255]
    raise :class:`DomainError`.
    """
    g = img.intensities
    if np.any(g < 0.0) or np.any(g > 255.0):
        raise DomainError("intensities must lie in [0, 255] before unit mapping")
    return (g - 128.0) / 128.0


def image_from_unit_vector(values, width: int, height: int) -> GrayImage:
    """Invert the unit mapping for emitting network outputs as pixels.

    Each component becomes clamp(round(v * 128 + 128), 0, 255).
    """
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    g = np.clip(np.floor(v * 128.0 + 128.5), 0.0, 255.0)
    return GrayImage(width, height, g)


def preprocess_pipeline(data: bytes) -> np.ndarray:
    """PGM bytes to input vector: decode, rescale, map to [-1, 127/128]."""
    return map_to_unit_range(rescale_intensities(load_pgm(data)))
