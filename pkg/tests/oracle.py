"""Brute-force reference implementations used to check the engine.

Everything here is deliberately slow, pure-Python, double-loop code with no
numpy: an independent path to the same numbers. Summation order (kernel row
then column, luma R then G then B) matches the documented contracts so
float results are comparable exactly.
"""

import math


def round_half_away(value: float) -> int:
    if value >= 0:
        return int(math.floor(value + 0.5))
    return -int(math.floor(-value + 0.5))


def clamp_byte(value: int) -> int:
    return max(0, min(255, value))


def convolve_bytes(data, width, height, channels, size, weights):
    """Per-pixel convolution with clamp-to-edge sampling.

    For 4-channel data, only R,G,B are convolved; alpha is copied through.
    Returns a list of bytes laid out like the input.
    """
    radius = size // 2
    out = [0] * (width * height * channels)
    color_channels = 1 if channels == 1 else 3

    def sample(x, y, c):
        cx = min(max(x, 0), width - 1)
        cy = min(max(y, 0), height - 1)
        return data[(cy * width + cx) * channels + c]

    for y in range(height):
        for x in range(width):
            base = (y * width + x) * channels
            for c in range(color_channels):
                acc = 0.0
                for ky in range(size):
                    for kx in range(size):
                        acc += weights[ky * size + kx] * sample(
                            x + kx - radius, y + ky - radius, c
                        )
                out[base + c] = clamp_byte(round_half_away(acc))
            if channels == 4:
                out[base + 3] = data[base + 3]
    return out


def rgba_to_gray_bytes(data, width, height):
    out = [0] * (width * height)
    for i in range(width * height):
        r, g, b = data[i * 4], data[i * 4 + 1], data[i * 4 + 2]
        luma = 0.2126 * r + 0.7152 * g + 0.0722 * b
        out[i] = clamp_byte(round_half_away(luma))
    return out


def gray_to_rgba_bytes(data):
    out = []
    for g in data:
        out.extend((g, g, g, 255))
    return out


def harden_bytes(data, threshold=128):
    return [255 if v >= threshold else 0 for v in data]


def overlay_bytes(image, mask, width, height, color, opacity):
    """Blend color over mask-selected pixels of an RGBA byte sequence."""
    out = list(image)
    for i in range(width * height):
        if mask[i] != 255:
            continue
        for c in range(3):
            blended = opacity * color[c] + (1.0 - opacity) * image[i * 4 + c]
            out[i * 4 + c] = clamp_byte(round_half_away(blended))
        out[i * 4 + 3] = 255
    return out


def histogram_bytes(data):
    bins = [0] * 256
    for v in data:
        bins[v] += 1
    return bins


def count_differing_pixels(a, b, width, height, channels, tolerance=0):
    differing = 0
    for i in range(width * height):
        for c in range(channels):
            if abs(a[i * channels + c] - b[i * channels + c]) > tolerance:
                differing += 1
                break
    return differing


def crop_bytes(data, width, height, channels, x, y, w, h):
    out = []
    for row in range(y, y + h):
        for col in range(x, x + w):
            base = (row * width + col) * channels
            out.extend(data[base : base + channels])
    return out
