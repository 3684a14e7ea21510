"""Regenerate the bundled regression fixtures.

Ground-truth pixels are computed by the brute-force reference routines in
this file, NOT by the engine under test; Pillow is used purely as PNG
storage. Output is deterministic (fixed seeds), so reruns are no-ops
unless the fixture definitions change.

Usage: python3 tools/make_fixtures.py
"""

import json
import math
import random
from pathlib import Path

from PIL import Image

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "boostlet" / "fixtures"
ASSETS = FIXTURES / "assets"
SUITE = FIXTURES / "suite"

SOBEL = (-1, 0, 1, -2, 0, 2, -1, 0, 1)


# ---------------------------------------------------------------------------
# Reference pixel math (pure Python, double loops).
# ---------------------------------------------------------------------------

def round_half_away(value):
    if value >= 0:
        return int(math.floor(value + 0.5))
    return -int(math.floor(-value + 0.5))


def clamp_byte(value):
    return max(0, min(255, value))


def convolve_rgba(data, width, height, size, weights):
    radius = size // 2
    out = bytearray(len(data))

    def sample(x, y, c):
        cx = min(max(x, 0), width - 1)
        cy = min(max(y, 0), height - 1)
        return data[(cy * width + cx) * 4 + c]

    for y in range(height):
        for x in range(width):
            base = (y * width + x) * 4
            for c in range(3):
                acc = 0.0
                for ky in range(size):
                    for kx in range(size):
                        acc += weights[ky * size + kx] * sample(
                            x + kx - radius, y + ky - radius, c
                        )
                out[base + c] = clamp_byte(round_half_away(acc))
            out[base + 3] = data[base + 3]
    return bytes(out)


def invert_bytes(data):
    return bytes(255 - v for v in data)


def threshold_overlay(data, width, height, threshold, color, opacity):
    out = bytearray(data)
    for i in range(width * height):
        r, g, b = data[i * 4], data[i * 4 + 1], data[i * 4 + 2]
        luma = 0.2126 * r + 0.7152 * g + 0.0722 * b
        if clamp_byte(round_half_away(luma)) >= threshold:
            for c in range(3):
                blended = opacity * color[c] + (1.0 - opacity) * data[i * 4 + c]
                out[i * 4 + c] = clamp_byte(round_half_away(blended))
            out[i * 4 + 3] = 255
    return bytes(out)


# ---------------------------------------------------------------------------
# Synthetic inputs.
# ---------------------------------------------------------------------------

def make_structured_rgba(side, seed):
    """Radial gradient with rectangles and mild noise; alpha pinned to 255."""
    rng = random.Random(seed)
    data = bytearray(side * side * 4)
    center = side / 2
    rects = [
        (
            rng.randrange(side // 2),
            rng.randrange(side // 2),
            rng.randint(side // 8, side // 3),
            rng.randint(side // 8, side // 3),
            rng.randrange(256),
        )
        for _ in range(6)
    ]
    for y in range(side):
        for x in range(side):
            distance = math.hypot(x - center, y - center) / center
            value = clamp_byte(int(255 * (1 - distance)))
            for rx, ry, rw, rh, rv in rects:
                if rx <= x < rx + rw and ry <= y < ry + rh:
                    value = rv
            value = clamp_byte(value + rng.randint(-6, 6))
            base = (y * side + x) * 4
            data[base] = value
            data[base + 1] = clamp_byte(value + rng.randint(-3, 3))
            data[base + 2] = clamp_byte(255 - value + rng.randint(-3, 3))
            data[base + 3] = 255
    return bytes(data)


def make_random_rgba(side, seed):
    rng = random.Random(seed)
    data = bytearray()
    for _ in range(side * side):
        data.extend((rng.randrange(256), rng.randrange(256), rng.randrange(256), 255))
    return bytes(data)


def make_gradient_rgba(side):
    data = bytearray()
    for y in range(side):
        for x in range(side):
            value = round(255 * x / (side - 1))
            data.extend((value, value, value, 255))
    return bytes(data)


def save_rgba(path, data, side):
    Image.frombytes("RGBA", (side, side), data).save(path, format="PNG")
    print(f"wrote {path}")


def write_json(path, payload):
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main():
    ASSETS.mkdir(parents=True, exist_ok=True)
    SUITE.mkdir(parents=True, exist_ok=True)

    # sobel: the 256x256 edge-detection reproduction case
    side = 256
    image = make_structured_rgba(side, seed=2024)
    save_rgba(ASSETS / "input-256.png", image, side)
    save_rgba(ASSETS / "truth-sobel-256.png", convolve_rgba(image, side, side, 3, SOBEL), side)
    write_json(
        ASSETS / "manifest-sobel.json",
        {
            "id": "sobel-file",
            "name": "Sobel From File",
            "category": "filters",
            "pipeline": [
                {"op": "filter", "params": {"kernel": {"size": 3, "weights": list(SOBEL)}}}
            ],
        },
    )
    write_json(
        SUITE / "sobel-256.json",
        {
            "name": "sobel-256",
            "input": "../assets/input-256.png",
            "manifest": "../assets/manifest-sobel.json",
            "ground_truth": "../assets/truth-sobel-256.png",
        },
    )

    # invert: involution sanity case
    side = 32
    image = make_random_rgba(side, seed=77)
    save_rgba(ASSETS / "input-32.png", image, side)
    save_rgba(ASSETS / "truth-invert-32.png", invert_bytes(image), side)
    write_json(
        ASSETS / "manifest-invert.json",
        {
            "id": "invert-file",
            "name": "Invert From File",
            "category": "filters",
            "pipeline": [{"op": "invert"}],
        },
    )
    write_json(
        SUITE / "invert-32.json",
        {
            "name": "invert-32",
            "input": "../assets/input-32.png",
            "manifest": "../assets/manifest-invert.json",
            "ground_truth": "../assets/truth-invert-32.png",
        },
    )

    # threshold-mask: gray ramp, bright half overlaid in red
    side = 64
    image = make_gradient_rgba(side)
    save_rgba(ASSETS / "input-gradient-64.png", image, side)
    save_rgba(
        ASSETS / "truth-threshold-64.png",
        threshold_overlay(image, side, side, 128, (255, 0, 0), 0.5),
        side,
    )
    write_json(
        ASSETS / "manifest-threshold.json",
        {
            "id": "threshold-file",
            "name": "Threshold Overlay From File",
            "category": "filters",
            "pipeline": [
                {"op": "rgba_to_grayscale"},
                {"op": "harden_mask", "params": {"threshold": 128}},
                {"op": "apply_mask", "params": {"color": [255, 0, 0], "opacity": 0.5}},
            ],
        },
    )
    write_json(
        SUITE / "threshold-64.json",
        {
            "name": "threshold-64",
            "input": "../assets/input-gradient-64.png",
            "manifest": "../assets/manifest-threshold.json",
            "ground_truth": "../assets/truth-threshold-64.png",
        },
    )


if __name__ == "__main__":
    main()
