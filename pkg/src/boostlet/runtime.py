"""Boostlet execution: the acquire -> process -> commit lifecycle.

A run snapshots the host once, resolves declared interactions, threads a
working buffer (and possibly a mask or histogram) through the pipeline, and
commits exactly once at the end. Commit being the only mutating step is what
makes failed and cancelled runs leave the host byte-identical.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import pixels
from .codec import PNG_SIGNATURE, decode_png, encode_png
from .errors import BoostletError, InteractionCancelled, ValidationError
from .hosts import Host
from .http_client import PNG_MEDIA_TYPE, HttpExchange, send_http_post
from .interaction import (
    InteractionSource,
    Rect,
    ScriptedSource,
    SeedPoint,
    crop,
    request_box,
    request_seeds,
)
from .manifest import (
    DEFAULT_OVERLAY_COLOR,
    DEFAULT_OVERLAY_OPACITY,
    PluginManifest,
    StepSpec,
)
from .pixels import GRAYSCALE, RGBA, Histogram, Kernel, Mask, PixelBuffer

logger = logging.getLogger(__name__)

OUTCOME_COMMITTED = "committed"
OUTCOME_CANCELLED = "cancelled"
OUTCOME_FAILED = "failed"


@dataclass(frozen=True)
class Hint:
    """A transient message a plugin surfaces to the user."""

    message: str
    seconds: float


@dataclass(frozen=True)
class StepRecord:
    """Wall time spent executing one pipeline step."""

    op: str
    seconds: float


@dataclass
class RunReport:
    """Everything a CI consumer needs to know about one plugin run."""

    plugin: str
    outcome: str = OUTCOME_FAILED
    reason: str | None = None
    steps: list[StepRecord] = field(default_factory=list)
    hints: list[Hint] = field(default_factory=list)
    histogram: Histogram | None = None
    box: Rect | None = None
    seeds: list[SeedPoint] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "plugin": self.plugin,
            "outcome": self.outcome,
            "reason": self.reason,
            "steps": [{"op": s.op, "seconds": s.seconds} for s in self.steps],
            "hints": [{"message": h.message, "seconds": h.seconds} for h in self.hints],
            "histogram": list(self.histogram.bins) if self.histogram else None,
            "box": [self.box.x, self.box.y, self.box.w, self.box.h] if self.box else None,
            "seeds": [[p.x, p.y] for p in self.seeds],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


class Session:
    """One logical caller driving an active host.

    This is the programmatic API surface plugins build on: host pixel I/O,
    interaction requests, remote exchanges, and hints. Declarative manifests
    are interpreted over a session by :func:`run_plugin`.
    """

    def __init__(self, host: Host, source: InteractionSource | None = None):
        self.host = host
        self.source = source if source is not None else ScriptedSource()
        self.hints: list[Hint] = []

    def get_image(self) -> PixelBuffer:
        return self.host.get_image()

    def set_image(self, buffer: PixelBuffer) -> None:
        self.host.set_image(buffer)

    def set_mask(self, mask: Mask, color: Sequence[int], opacity: float) -> None:
        self.host.set_mask(mask, color, opacity)

    def select_box(self) -> Rect:
        return request_box(self.source, self.host.surface)

    def select_seeds(self, howmany: int) -> list[SeedPoint]:
        return request_seeds(self.source, howmany, self.host.surface)

    def send_http_post(
        self,
        url: str,
        body: bytes,
        content_type: str = "application/octet-stream",
        timeout: float | None = None,
    ) -> HttpExchange:
        return send_http_post(url, body, content_type, timeout)

    def hint(self, message: str, seconds: float = 2.0) -> None:
        """Record a transient notification; headless mode logs it."""
        logger.info("hint (%.1fs): %s", seconds, message)
        self.hints.append(Hint(message, float(seconds)))


_PRODUCT_BUFFER = "buffer"
_PRODUCT_MASK = "mask"
_PRODUCT_HISTOGRAM = "histogram"


@dataclass
class _RunState:
    acquired: PixelBuffer
    buffer: PixelBuffer
    mask: Mask | None = None
    histogram: Histogram | None = None
    box: Rect | None = None
    seeds: list[SeedPoint] = field(default_factory=list)
    product: str = _PRODUCT_BUFFER
    mask_color: tuple[int, int, int] = DEFAULT_OVERLAY_COLOR
    mask_opacity: float = DEFAULT_OVERLAY_OPACITY


def _as_rgba(buffer: PixelBuffer) -> PixelBuffer:
    return buffer if buffer.channels == RGBA else pixels.grayscale_to_rgba(buffer)


def _mask_from_response(body: bytes, buffer: PixelBuffer) -> Mask:
    if body.startswith(PNG_SIGNATURE):
        decoded = decode_png(body)
        if decoded.channels != GRAYSCALE:
            decoded = pixels.rgba_to_grayscale(decoded)
        if (decoded.width, decoded.height) != (buffer.width, buffer.height):
            raise ValidationError(
                f"mask response {decoded.width}x{decoded.height} does not match"
                f" working buffer {buffer.width}x{buffer.height}"
            )
        return Mask(decoded.width, decoded.height, decoded.data)
    if len(body) != buffer.pixel_count:
        raise ValidationError(
            f"raw mask response of {len(body)} bytes does not cover"
            f" {buffer.pixel_count} pixels"
        )
    return Mask(buffer.width, buffer.height, body)


def _execute_step(step: StepSpec, state: _RunState, session: Session) -> None:
    params = step.params
    if step.op == "filter":
        spec = params["kernel"]
        state.buffer = pixels.convolve(state.buffer, Kernel(spec["size"], tuple(spec["weights"])))
        state.product = _PRODUCT_BUFFER
    elif step.op == "rgba_to_grayscale":
        state.buffer = pixels.rgba_to_grayscale(state.buffer)
        state.product = _PRODUCT_BUFFER
    elif step.op == "grayscale_to_rgba":
        state.buffer = pixels.grayscale_to_rgba(state.buffer)
        state.product = _PRODUCT_BUFFER
    elif step.op == "invert":
        state.buffer = pixels.invert(state.buffer)
        state.product = _PRODUCT_BUFFER
    elif step.op == "harden_mask":
        threshold = params.get("threshold", pixels.DEFAULT_MASK_THRESHOLD)
        if state.mask is not None:
            state.mask = pixels.harden_mask(state.mask, threshold)
        else:
            if state.buffer.channels != GRAYSCALE:
                raise ValidationError(
                    "harden_mask needs an existing mask or a grayscale working buffer"
                )
            raw = Mask(state.buffer.width, state.buffer.height, state.buffer.data)
            state.mask = pixels.harden_mask(raw, threshold)
            # The gray buffer was consumed into the mask; the overlay target
            # reverts to the acquired image.
            state.buffer = state.acquired
        state.mask_color = tuple(params.get("color", DEFAULT_OVERLAY_COLOR))
        state.mask_opacity = float(params.get("opacity", DEFAULT_OVERLAY_OPACITY))
        state.product = _PRODUCT_MASK
    elif step.op == "apply_mask":
        if state.mask is None:
            raise ValidationError("apply_mask needs a mask produced by an earlier step")
        color = tuple(params.get("color", state.mask_color))
        opacity = float(params.get("opacity", state.mask_opacity))
        state.buffer = pixels.apply_mask(_as_rgba(state.buffer), state.mask, color, opacity)
        state.product = _PRODUCT_BUFFER
    elif step.op == "compute_histogram":
        state.histogram = pixels.compute_histogram(state.buffer)
        state.product = _PRODUCT_HISTOGRAM
    elif step.op == "crop":
        raw = params.get("rect")
        if raw is not None:
            rect = Rect(*raw)
        elif state.box is not None:
            rect = state.box
        else:
            raise ValidationError("crop needs a rect param or a declared box interaction")
        state.buffer = crop(state.buffer, rect)
        state.product = _PRODUCT_BUFFER
    elif step.op == "http_infer":
        body = encode_png(state.buffer).data
        exchange = session.send_http_post(
            params["url"],
            body,
            content_type=params.get("content_type", PNG_MEDIA_TYPE),
            timeout=params.get("timeout"),
        )
        if params.get("response", "image") == "mask":
            state.mask = _mask_from_response(exchange.response_body, state.buffer)
            state.mask_color = tuple(params.get("color", DEFAULT_OVERLAY_COLOR))
            state.mask_opacity = float(params.get("opacity", DEFAULT_OVERLAY_OPACITY))
            state.product = _PRODUCT_MASK
        else:
            state.buffer = decode_png(exchange.response_body)
            state.product = _PRODUCT_BUFFER
    else:  # unreachable: StepSpec validates the op against the closed set
        raise ValidationError(f"unknown op {step.op!r}")


def run_plugin(
    manifest: PluginManifest,
    host: Host,
    source: InteractionSource | None = None,
) -> RunReport:
    """Execute a manifest against an active host.

    The host is only written during the final commit, so any failure or
    cancellation leaves its pixels untouched.
    """
    session = Session(host, source)
    report = RunReport(plugin=manifest.id)
    try:
        acquired = host.get_image()
        state = _RunState(acquired=acquired, buffer=acquired)

        if manifest.interactions.box:
            state.box = session.select_box()
            report.box = state.box
        if manifest.interactions.seeds:
            state.seeds = session.select_seeds(manifest.interactions.seeds)
            report.seeds = state.seeds

        for step in manifest.pipeline:
            started = time.perf_counter()
            _execute_step(step, state, session)
            report.steps.append(StepRecord(step.op, time.perf_counter() - started))

        if state.product == _PRODUCT_MASK:
            host.set_mask(state.mask, state.mask_color, state.mask_opacity)
        elif state.product == _PRODUCT_BUFFER:
            host.set_image(state.buffer)
        # A histogram-terminal pipeline commits by emitting its artifact;
        # the host image stays as acquired.
        report.histogram = state.histogram
        report.outcome = OUTCOME_COMMITTED
    except InteractionCancelled as exc:
        report.outcome = OUTCOME_CANCELLED
        report.reason = str(exc)
    except BoostletError as exc:
        report.outcome = OUTCOME_FAILED
        report.reason = str(exc)
    finally:
        report.hints = session.hints
    return report
