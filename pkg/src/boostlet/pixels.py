"""Pure pixel-buffer operations: convolution, channel conversion, masks, histograms.

Every operation returns a fresh value and never mutates its inputs, so buffers
can be shared freely across threads and sessions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError

GRAYSCALE = 1
RGBA = 4

# Rec. 709 luma weights used for the RGB -> gray reduction.
LUMA_WEIGHTS = (0.2126, 0.7152, 0.0722)

DEFAULT_MASK_THRESHOLD = 128


@dataclass(frozen=True)
class PixelBuffer:
    """Rectangular raster of 8-bit samples: grayscale (1 channel) or RGBA (4).

    ``data`` is row-major with a top-left origin, one byte per sample,
    RGBA in R,G,B,A order.
    """

    width: int
    height: int
    channels: int
    data: bytes

    def __post_init__(self):
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if self.width < 1 or self.height < 1:
            raise ValidationError(
                f"buffer dimensions must be positive, got {self.width}x{self.height}"
            )
        if self.channels not in (GRAYSCALE, RGBA):
            raise ValidationError(f"channels must be 1 or 4, got {self.channels}")
        expected = self.width * self.height * self.channels
        if len(self.data) != expected:
            raise ValidationError(
                f"data length {len(self.data)} != width*height*channels ({expected})"
            )

    @classmethod
    def from_array(cls, array: np.ndarray) -> "PixelBuffer":
        """Build a buffer from an (H, W) or (H, W, C) array of byte values."""
        arr = np.asarray(array)
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3:
            raise ValidationError(f"expected a 2-D or 3-D array, got {arr.ndim}-D")
        height, width, channels = arr.shape
        return cls(width, height, channels, arr.astype(np.uint8).tobytes())

    def to_array(self) -> np.ndarray:
        """Return a writable (H, W, C) uint8 copy of the samples."""
        flat = np.frombuffer(self.data, dtype=np.uint8)
        return flat.reshape(self.height, self.width, self.channels).copy()

    @property
    def pixel_count(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class Kernel:
    """Odd-sided square weight matrix, stored row-major."""

    size: int
    weights: tuple[float, ...]

    def __post_init__(self):
        if self.size < 1 or self.size % 2 == 0:
            raise ValidationError(f"kernel size must be odd and >= 1, got {self.size}")
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.weights) != self.size * self.size:
            raise ValidationError(
                f"kernel needs {self.size * self.size} weights, got {len(self.weights)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "Kernel":
        flat = [w for row in rows for w in row]
        return cls(len(rows), tuple(flat))

    def to_matrix(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64).reshape(self.size, self.size)


@dataclass(frozen=True)
class Mask:
    """Per-pixel selection weights; hardened masks hold only 0 or 255."""

    width: int
    height: int
    data: bytes

    def __post_init__(self):
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if self.width < 1 or self.height < 1:
            raise ValidationError(
                f"mask dimensions must be positive, got {self.width}x{self.height}"
            )
        if len(self.data) != self.width * self.height:
            raise ValidationError(
                f"mask data length {len(self.data)} != width*height"
                f" ({self.width * self.height})"
            )

    def to_array(self) -> np.ndarray:
        flat = np.frombuffer(self.data, dtype=np.uint8)
        return flat.reshape(self.height, self.width).copy()

    @property
    def is_hardened(self) -> bool:
        arr = np.frombuffer(self.data, dtype=np.uint8)
        return bool(np.all((arr == 0) | (arr == 255)))


@dataclass(frozen=True)
class Histogram:
    """256 per-value sample counts for a grayscale buffer."""

    bins: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bins", tuple(int(b) for b in self.bins))
        if len(self.bins) != 256:
            raise ValidationError(f"histogram needs 256 bins, got {len(self.bins)}")
        if any(b < 0 for b in self.bins):
            raise ValidationError("histogram bins must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.bins)


def _round_half_away(values: np.ndarray) -> np.ndarray:
    """Round to the nearest integer with halves going away from zero."""
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def convolve(buffer: PixelBuffer, kernel: Kernel) -> PixelBuffer:
    """Cross-correlate a buffer with a kernel, clamping samples at the border.

    Border pixels are sampled with coordinate replication (clamp-to-edge).
    Results are rounded half-away-from-zero and clamped to [0, 255]. RGBA
    buffers are processed per color channel; alpha is copied through.
    """
    height, width = buffer.height, buffer.width
    radius = kernel.size // 2
    matrix = kernel.to_matrix()
    arr = buffer.to_array()
    out = np.empty_like(arr)

    color_channels = 1 if buffer.channels == GRAYSCALE else 3
    for c in range(color_channels):
        padded = np.pad(arr[:, :, c].astype(np.float64), radius, mode="edge")
        acc = np.zeros((height, width), dtype=np.float64)
        for ky in range(kernel.size):
            for kx in range(kernel.size):
                acc += matrix[ky, kx] * padded[ky : ky + height, kx : kx + width]
        out[:, :, c] = np.clip(_round_half_away(acc), 0.0, 255.0).astype(np.uint8)
    if buffer.channels == RGBA:
        out[:, :, 3] = arr[:, :, 3]
    return PixelBuffer.from_array(out)


def grayscale_to_rgba(buffer: PixelBuffer) -> PixelBuffer:
    """Replicate each gray sample into (g, g, g, 255)."""
    if buffer.channels != GRAYSCALE:
        raise ValidationError(f"expected a 1-channel buffer, got {buffer.channels}")
    gray = buffer.to_array()[:, :, 0]
    out = np.empty((buffer.height, buffer.width, RGBA), dtype=np.uint8)
    out[:, :, 0] = gray
    out[:, :, 1] = gray
    out[:, :, 2] = gray
    out[:, :, 3] = 255
    return PixelBuffer.from_array(out)


def rgba_to_grayscale(buffer: PixelBuffer) -> PixelBuffer:
    """Reduce RGBA to gray with Rec. 709 luma weights; alpha is ignored."""
    if buffer.channels != RGBA:
        raise ValidationError(f"expected a 4-channel buffer, got {buffer.channels}")
    arr = buffer.to_array().astype(np.float64)
    wr, wg, wb = LUMA_WEIGHTS
    luma = wr * arr[:, :, 0] + wg * arr[:, :, 1] + wb * arr[:, :, 2]
    gray = np.clip(_round_half_away(luma), 0.0, 255.0).astype(np.uint8)
    return PixelBuffer.from_array(gray)


def harden_mask(mask: Mask, threshold: int = DEFAULT_MASK_THRESHOLD) -> Mask:
    """Force every mask value to 255 (>= threshold) or 0 (< threshold)."""
    if not 0 <= threshold <= 255:
        raise ValidationError(f"threshold must be a byte value, got {threshold}")
    arr = mask.to_array()
    hardened = np.where(arr >= threshold, 255, 0).astype(np.uint8)
    return Mask(mask.width, mask.height, hardened.tobytes())


def apply_mask(
    image: PixelBuffer,
    mask: Mask,
    color: Sequence[int],
    opacity: float,
) -> PixelBuffer:
    """Blend a color over the pixels a hardened mask selects.

    Where the mask is 255, each of R,G,B becomes
    round(opacity*color + (1-opacity)*pixel) and alpha is forced to 255;
    where the mask is 0 the pixel is untouched.
    """
    if image.channels != RGBA:
        raise ValidationError(f"expected a 4-channel image, got {image.channels}")
    if (mask.width, mask.height) != (image.width, image.height):
        raise ValidationError(
            f"mask {mask.width}x{mask.height} does not match image"
            f" {image.width}x{image.height}"
        )
    if not mask.is_hardened:
        raise ValidationError("mask must be hardened (values 0 or 255) before overlay")
    if not 0.0 <= opacity <= 1.0:
        raise ValidationError(f"opacity must be in [0, 1], got {opacity}")
    rgb = tuple(int(c) for c in color)
    if len(rgb) != 3 or any(not 0 <= c <= 255 for c in rgb):
        raise ValidationError(f"color must be three byte values, got {color!r}")

    arr = image.to_array()
    selected = mask.to_array() == 255
    for c in range(3):
        blended = opacity * rgb[c] + (1.0 - opacity) * arr[:, :, c].astype(np.float64)
        arr[:, :, c] = np.where(
            selected, np.clip(_round_half_away(blended), 0.0, 255.0), arr[:, :, c]
        ).astype(np.uint8)
    arr[:, :, 3] = np.where(selected, 255, arr[:, :, 3]).astype(np.uint8)
    return PixelBuffer.from_array(arr)


def compute_histogram(buffer: PixelBuffer) -> Histogram:
    """Count how many samples hold each of the 256 possible values."""
    if buffer.channels != GRAYSCALE:
        raise ValidationError(f"expected a 1-channel buffer, got {buffer.channels}")
    flat = np.frombuffer(buffer.data, dtype=np.uint8)
    counts = np.bincount(flat, minlength=256)
    return Histogram(tuple(int(c) for c in counts))


def invert(buffer: PixelBuffer) -> PixelBuffer:
    """Flip every sample to its 255-complement (an involution)."""
    arr = buffer.to_array()
    return PixelBuffer.from_array(255 - arr)
