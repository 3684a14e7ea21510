"""ROI acquisition: box and seed selection, scripted sources, and cropping.

Interactive widgets belong to frontends; the engine only needs a source that
answers requests. Scripted sources answer deterministically from FIFO queues,
which is what keeps plugin runs reproducible in headless mode.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InteractionCancelled, ValidationError
from .hosts import SurfaceInfo
from .pixels import PixelBuffer


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in image pixel coordinates, top-left anchored."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValidationError(f"rect origin must be non-negative, got ({self.x}, {self.y})")
        if self.w < 1 or self.h < 1:
            raise ValidationError(f"rect extent must be positive, got {self.w}x{self.h}")

    def validate_within(self, width: int, height: int) -> "Rect":
        if self.x + self.w > width or self.y + self.h > height:
            raise ValidationError(
                f"rect ({self.x},{self.y},{self.w},{self.h}) exceeds bounds {width}x{height}"
            )
        return self


@dataclass(frozen=True)
class SeedPoint:
    """A single selected pixel in image coordinates."""

    x: int
    y: int

    def validate_within(self, width: int, height: int) -> "SeedPoint":
        if not (0 <= self.x < width and 0 <= self.y < height):
            raise ValidationError(
                f"seed ({self.x},{self.y}) outside bounds {width}x{height}"
            )
        return self


class InteractionSource(ABC):
    """Answers box and seed requests made during a plugin run."""

    kind = "interactive"

    @abstractmethod
    def next_box(self) -> tuple[int, int, int, int]:
        """Produce the next (x, y, w, h) or raise InteractionCancelled."""

    @abstractmethod
    def next_seed(self) -> tuple[int, int]:
        """Produce the next (x, y) or raise InteractionCancelled."""


class ScriptedSource(InteractionSource):
    """Deterministic source consuming pre-supplied responses in FIFO order."""

    kind = "scripted"

    def __init__(
        self,
        boxes: Iterable[Sequence[int]] = (),
        seeds: Iterable[Sequence[int]] = (),
    ):
        self._boxes = deque(tuple(int(v) for v in box) for box in boxes)
        self._seeds = deque(tuple(int(v) for v in seed) for seed in seeds)

    @classmethod
    def from_entries(cls, entries: Iterable) -> "ScriptedSource":
        """Build a source from descriptor entries: {"box": [...]} / {"seed": [...]}."""
        boxes, seeds = [], []
        for entry in entries:
            if not isinstance(entry, dict) or len(entry) != 1:
                raise ValidationError(f"bad interaction entry: {entry!r}")
            if "box" in entry:
                boxes.append(entry["box"])
            elif "seed" in entry:
                seeds.append(entry["seed"])
            else:
                raise ValidationError(f"unknown interaction kind in {entry!r}")
        return cls(boxes=boxes, seeds=seeds)

    def next_box(self) -> tuple[int, int, int, int]:
        if not self._boxes:
            raise InteractionCancelled("scripted box queue is empty")
        box = self._boxes.popleft()
        if len(box) != 4:
            raise ValidationError(f"scripted box needs 4 values, got {box!r}")
        return box  # type: ignore[return-value]

    def next_seed(self) -> tuple[int, int]:
        if not self._seeds:
            raise InteractionCancelled("scripted seed queue is empty")
        seed = self._seeds.popleft()
        if len(seed) != 2:
            raise ValidationError(f"scripted seed needs 2 values, got {seed!r}")
        return seed  # type: ignore[return-value]


def request_box(source: InteractionSource, bounds: SurfaceInfo) -> Rect:
    """Obtain one rectangle from the source, validated against the bounds."""
    x, y, w, h = source.next_box()
    return Rect(x, y, w, h).validate_within(bounds.width, bounds.height)


def request_seeds(
    source: InteractionSource, howmany: int, bounds: SurfaceInfo
) -> list[SeedPoint]:
    """Obtain exactly ``howmany`` in-bounds points, in selection order."""
    if howmany < 1:
        raise ValidationError(f"howmany must be >= 1, got {howmany}")
    points = []
    for _ in range(howmany):
        x, y = source.next_seed()
        points.append(SeedPoint(x, y).validate_within(bounds.width, bounds.height))
    return points


def crop(buffer: PixelBuffer, roi: Rect) -> PixelBuffer:
    """Copy exactly the ROI pixels into a new roi.w x roi.h buffer."""
    roi.validate_within(buffer.width, buffer.height)
    arr = buffer.to_array()
    return PixelBuffer.from_array(arr[roi.y : roi.y + roi.h, roi.x : roi.x + roi.w, :])
