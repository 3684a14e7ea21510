"""Minimal PNG reader/writer used as an independent reference in tests.

Pure stdlib (struct + zlib). The writer always uses filter type 0; the
reader understands all five filter types but only 8-bit, non-interlaced
gray / RGB / RGBA — enough to cross-check the engine's codec without
sharing any code with it.
"""

import struct
import zlib

SIGNATURE = b"\x89PNG\r\n\x1a\n"

_CHANNELS = {0: 1, 2: 3, 3: 1, 6: 4}


def _chunk(kind: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(kind + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + kind + payload + struct.pack(">I", crc)


def write_png(width, height, pixels, color_type, bit_depth=8, palette=None):
    """Serialize raw samples (row-major bytes) with filter type 0 rows."""
    channels = _CHANNELS[color_type]
    stride = width * channels * (bit_depth // 8)
    raw = b"".join(
        b"\x00" + bytes(pixels[y * stride : (y + 1) * stride]) for y in range(height)
    )
    ihdr = struct.pack(">IIBBBBB", width, height, bit_depth, color_type, 0, 0, 0)
    chunks = [_chunk(b"IHDR", ihdr)]
    if color_type == 3:
        chunks.append(_chunk(b"PLTE", bytes(palette)))
    chunks.append(_chunk(b"IDAT", zlib.compress(raw)))
    chunks.append(_chunk(b"IEND", b""))
    return SIGNATURE + b"".join(chunks)


def _unfilter(raw, width, height, channels):
    stride = width * channels
    out = bytearray()
    prev = bytearray(stride)
    pos = 0
    for _ in range(height):
        ftype = raw[pos]
        pos += 1
        line = bytearray(raw[pos : pos + stride])
        pos += stride
        if ftype == 0:
            pass
        elif ftype == 1:  # sub
            for i in range(channels, stride):
                line[i] = (line[i] + line[i - channels]) & 0xFF
        elif ftype == 2:  # up
            for i in range(stride):
                line[i] = (line[i] + prev[i]) & 0xFF
        elif ftype == 3:  # average
            for i in range(stride):
                left = line[i - channels] if i >= channels else 0
                line[i] = (line[i] + (left + prev[i]) // 2) & 0xFF
        elif ftype == 4:  # paeth
            for i in range(stride):
                left = line[i - channels] if i >= channels else 0
                up = prev[i]
                upleft = prev[i - channels] if i >= channels else 0
                p = left + up - upleft
                pa, pb, pc = abs(p - left), abs(p - up), abs(p - upleft)
                if pa <= pb and pa <= pc:
                    predictor = left
                elif pb <= pc:
                    predictor = up
                else:
                    predictor = upleft
                line[i] = (line[i] + predictor) & 0xFF
        else:
            raise ValueError(f"unknown filter type {ftype}")
        out += line
        prev = line
    return bytes(out)


def read_png(data):
    """Parse a PNG into (width, height, channels, samples)."""
    assert data.startswith(SIGNATURE), "missing PNG signature"
    pos = len(SIGNATURE)
    width = height = None
    channels = None
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        kind = data[pos + 4 : pos + 8]
        payload = data[pos + 8 : pos + 8 + length]
        pos += 12 + length
        if kind == b"IHDR":
            width, height, bit_depth, color_type, _, _, interlace = struct.unpack(
                ">IIBBBBB", payload
            )
            assert bit_depth == 8, f"reference reader only handles 8-bit, got {bit_depth}"
            assert interlace == 0, "reference reader only handles non-interlaced PNGs"
            assert color_type in (0, 2, 6), f"unhandled color type {color_type}"
            channels = _CHANNELS[color_type]
        elif kind == b"IDAT":
            idat += payload
        elif kind == b"IEND":
            break
    samples = _unfilter(zlib.decompress(idat), width, height, channels)
    return width, height, channels, samples
