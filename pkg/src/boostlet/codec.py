"""PNG interchange: encode buffers to PNG bytes and decode PNGs back.

PNG is the engine's only codec. It is lossless, so regression diffs measure
processing rather than compression. Pillow does the heavy lifting behind
this module's contract.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, UnsupportedFormatError, ValidationError
from .pixels import GRAYSCALE, RGBA, PixelBuffer

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

# Offset of the bit-depth byte: 8 signature bytes, then the IHDR chunk
# (4 length + 4 type + 4 width + 4 height) which must come first.
_BIT_DEPTH_OFFSET = 24


@dataclass(frozen=True)
class EncodedImage:
    """A PNG byte stream; ``format`` exists for forward compatibility."""

    data: bytes
    format: str = "png"

    def __post_init__(self):
        if not self.data.startswith(PNG_SIGNATURE):
            raise ValidationError("encoded image does not start with the PNG signature")


def encode_png(buffer: PixelBuffer) -> EncodedImage:
    """Losslessly encode a buffer: 1 channel as grayscale PNG, 4 as RGBA."""
    mode = "L" if buffer.channels == GRAYSCALE else "RGBA"
    image = Image.frombytes(mode, (buffer.width, buffer.height), buffer.data)
    out = io.BytesIO()
    image.save(out, format="PNG")
    return EncodedImage(out.getvalue())


def decode_png(encoded: EncodedImage | bytes) -> PixelBuffer:
    """Decode PNG bytes into the nearest supported buffer layout.

    Grayscale sources become 1-channel buffers; palette, RGB, and anything
    carrying color becomes 4-channel with alpha filled as 255 where absent.
    16-bit sources are rejected rather than silently truncated.
    """
    data = encoded.data if isinstance(encoded, EncodedImage) else bytes(encoded)
    if not data.startswith(PNG_SIGNATURE):
        raise DecodeError("not a PNG byte stream (bad signature)")
    if len(data) > _BIT_DEPTH_OFFSET and data[_BIT_DEPTH_OFFSET] == 16:
        raise UnsupportedFormatError("16-bit PNGs are not supported")
    try:
        image = Image.open(io.BytesIO(data))
        image.load()
    except UnidentifiedImageError as exc:
        raise DecodeError(f"malformed PNG: {exc}") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"malformed PNG: {exc}") from exc

    width, height = image.size
    if width < 1 or height < 1:
        raise DecodeError(f"degenerate image dimensions {width}x{height}")
    if image.mode == "L":
        return PixelBuffer(width, height, GRAYSCALE, image.tobytes())
    if image.mode == "1":
        return PixelBuffer(width, height, GRAYSCALE, image.convert("L").tobytes())
    if image.mode in ("I", "I;16", "I;16B", "I;16L", "I;16N"):
        # Defensive: normally caught by the IHDR bit-depth check above.
        raise UnsupportedFormatError(f"unsupported high-depth mode {image.mode}")
    return PixelBuffer(width, height, RGBA, image.convert("RGBA").tobytes())
