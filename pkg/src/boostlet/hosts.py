"""Host adapters: the uniform contract between the engine and a display host.

A registry of adapters probes an environment in priority order; the winning
adapter binds an active :class:`Host` the engine reads (``get_image``) and
writes (``set_image`` / ``set_mask``). Two headless hosts ship here: a
file-backed host (PNG on disk, written back on commit) and an in-memory
host. A lowest-priority fallback adapter targets the largest plain surface
when no marker is recognized.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from . import pixels
from .codec import decode_png, encode_png
from .errors import (
    AcquisitionError,
    BoostletError,
    CommitError,
    NoSurfaceError,
    RegistrationError,
    ValidationError,
)
from .pixels import GRAYSCALE, Mask, PixelBuffer

CAP_IMAGE_READ = "image-read"
CAP_IMAGE_WRITE = "image-write"
CAP_MASK_OVERLAY = "mask-overlay"
CAP_BOX_SELECT = "box-select"
CAP_SEED_SELECT = "seed-select"

REQUIRED_CAPABILITIES = frozenset({CAP_IMAGE_READ, CAP_IMAGE_WRITE})

# Environment keys the built-in adapters probe for.
ENV_FILE_HOST = "file_host"
ENV_MEMORY_HOST = "memory_host"
ENV_SURFACES = "surfaces"


@dataclass(frozen=True)
class SurfaceInfo:
    """One drawing surface a host exposes."""

    id: object
    width: int
    height: int

    def __post_init__(self):
        if self.width * self.height <= 0:
            raise ValidationError(
                f"surface must have positive area, got {self.width}x{self.height}"
            )

    @property
    def area(self) -> int:
        return self.width * self.height


def select_largest_surface(
    surfaces: Sequence[SurfaceInfo], override: int | None = None
) -> SurfaceInfo:
    """Pick the surface with the largest area; ties go to the earliest entry.

    An explicit ``override`` index bypasses the maximization entirely.
    """
    if not surfaces:
        raise NoSurfaceError("no drawing surface available")
    if override is not None:
        if not 0 <= override < len(surfaces):
            raise ValidationError(
                f"surface override {override} out of range 0..{len(surfaces) - 1}"
            )
        return surfaces[override]
    return max(surfaces, key=lambda s: s.area)


class Host(ABC):
    """An active surface the engine snapshots and commits pixels to."""

    adapter: str = "unbound"

    @property
    @abstractmethod
    def surface(self) -> SurfaceInfo:
        """Metadata for the bound surface."""

    @abstractmethod
    def _read(self) -> PixelBuffer:
        """Raw snapshot of the current surface pixels."""

    @abstractmethod
    def _write(self, buffer: PixelBuffer) -> None:
        """Store an RGBA buffer whose dimensions already match the surface."""

    def get_image(self) -> PixelBuffer:
        """Snapshot the displayed pixels as RGBA, top-left origin, row-major."""
        buffer = self._read()
        if buffer.channels == GRAYSCALE:
            buffer = pixels.grayscale_to_rgba(buffer)
        return buffer

    def set_image(self, buffer: PixelBuffer) -> None:
        """Commit pixels; 1-channel buffers are expanded to RGBA first."""
        surface = self.surface
        if (buffer.width, buffer.height) != (surface.width, surface.height):
            raise CommitError(
                f"buffer {buffer.width}x{buffer.height} does not match surface"
                f" {surface.width}x{surface.height}"
            )
        if buffer.channels == GRAYSCALE:
            buffer = pixels.grayscale_to_rgba(buffer)
        self._write(buffer)

    def set_mask(self, mask: Mask, color: Sequence[int], opacity: float) -> None:
        """Composite a hardened mask over the current image and commit it."""
        composited = pixels.apply_mask(self.get_image(), mask, color, opacity)
        self.set_image(composited)


class MemoryHost(Host):
    """Host whose surface lives entirely in memory."""

    def __init__(self, buffer: PixelBuffer, surface_id: object = "memory"):
        if buffer.channels == GRAYSCALE:
            buffer = pixels.grayscale_to_rgba(buffer)
        self._buffer = buffer
        self._surface = SurfaceInfo(surface_id, buffer.width, buffer.height)

    @property
    def surface(self) -> SurfaceInfo:
        return self._surface

    def _read(self) -> PixelBuffer:
        return self._buffer

    def _write(self, buffer: PixelBuffer) -> None:
        self._buffer = buffer


class FileHost(Host):
    """Headless host backed by a PNG file; commits write the file back."""

    def __init__(self, path: str | Path):
        self._path = Path(path)
        try:
            buffer = decode_png(self._path.read_bytes())
        except (OSError, BoostletError) as exc:
            raise AcquisitionError(f"cannot load surface from {self._path}: {exc}") from exc
        if buffer.channels == GRAYSCALE:
            buffer = pixels.grayscale_to_rgba(buffer)
        self._buffer = buffer
        self._surface = SurfaceInfo(str(self._path), buffer.width, buffer.height)

    @property
    def path(self) -> Path:
        return self._path

    @property
    def surface(self) -> SurfaceInfo:
        return self._surface

    def _read(self) -> PixelBuffer:
        return self._buffer

    def _write(self, buffer: PixelBuffer) -> None:
        try:
            self._path.write_bytes(encode_png(buffer).data)
        except OSError as exc:
            raise CommitError(f"cannot write surface back to {self._path}: {exc}") from exc
        self._buffer = buffer


class HostAdapter(ABC):
    """Probes an environment and, on a match, binds an active host."""

    name: str = ""
    capabilities: frozenset[str] = frozenset()

    @abstractmethod
    def probe(self, environment: Mapping) -> bool:
        """Whether this adapter recognizes the environment."""

    @abstractmethod
    def bind(self, environment: Mapping, surface_override: int | None = None) -> Host:
        """Bind the active host; only called after a successful probe."""


class FileHostAdapter(HostAdapter):
    """Recognizes the ``file_host`` marker: a PNG path to load and write back."""

    name = "file"
    capabilities = frozenset({CAP_IMAGE_READ, CAP_IMAGE_WRITE, CAP_MASK_OVERLAY})

    def probe(self, environment: Mapping) -> bool:
        return ENV_FILE_HOST in environment

    def bind(self, environment: Mapping, surface_override: int | None = None) -> Host:
        host = FileHost(environment[ENV_FILE_HOST])
        select_largest_surface([host.surface], surface_override)
        host.adapter = self.name
        return host


class MemoryHostAdapter(HostAdapter):
    """Recognizes the ``memory_host`` marker: a buffer held in RAM."""

    name = "memory"
    capabilities = frozenset({CAP_IMAGE_READ, CAP_IMAGE_WRITE, CAP_MASK_OVERLAY})

    def probe(self, environment: Mapping) -> bool:
        return ENV_MEMORY_HOST in environment

    def bind(self, environment: Mapping, surface_override: int | None = None) -> Host:
        host = MemoryHost(environment[ENV_MEMORY_HOST])
        select_largest_surface([host.surface], surface_override)
        host.adapter = self.name
        return host


class FallbackAdapter(HostAdapter):
    """Last resort: take the largest plain surface the environment exposes."""

    name = "fallback"
    capabilities = frozenset({CAP_IMAGE_READ, CAP_IMAGE_WRITE, CAP_MASK_OVERLAY})

    def probe(self, environment: Mapping) -> bool:
        return bool(environment.get(ENV_SURFACES))

    def bind(self, environment: Mapping, surface_override: int | None = None) -> Host:
        buffers = list(environment[ENV_SURFACES])
        infos = [
            SurfaceInfo(index, buf.width, buf.height)
            for index, buf in enumerate(buffers)
        ]
        chosen = select_largest_surface(infos, surface_override)
        host = MemoryHost(buffers[chosen.id], surface_id=chosen.id)
        host.adapter = self.name
        return host


class AdapterRegistry:
    """Priority-ordered adapter collection driving host detection.

    Immutable once populated; detection iterates by descending priority with
    registration order breaking ties.
    """

    def __init__(self):
        self._entries: list[tuple[int, int, HostAdapter]] = []

    def register(self, adapter: HostAdapter, priority: int = 0) -> "AdapterRegistry":
        if not adapter.name:
            raise ValidationError("adapter must carry a non-empty name")
        if any(existing.name == adapter.name for _, _, existing in self._entries):
            raise RegistrationError(f"adapter name {adapter.name!r} already registered")
        if not REQUIRED_CAPABILITIES <= adapter.capabilities:
            raise ValidationError(
                f"adapter {adapter.name!r} must support image-read and image-write"
            )
        self._entries.append((priority, len(self._entries), adapter))
        return self

    def adapters(self) -> list[HostAdapter]:
        """Adapters in detection order: priority descending, then insertion."""
        return [a for _, _, a in sorted(self._entries, key=lambda e: (-e[0], e[1]))]

    def detect(
        self, environment: Mapping, surface_override: int | None = None
    ) -> Host:
        """Bind the highest-priority adapter whose probe succeeds."""
        if not self._entries:
            raise NoSurfaceError("adapter registry is empty")
        for adapter in self.adapters():
            if adapter.probe(environment):
                return adapter.bind(environment, surface_override)
        raise NoSurfaceError("no adapter recognized the environment")


def default_registry() -> AdapterRegistry:
    """Registry with the built-in hosts; the fallback sits at the bottom."""
    registry = AdapterRegistry()
    registry.register(FileHostAdapter(), priority=100)
    registry.register(MemoryHostAdapter(), priority=90)
    registry.register(FallbackAdapter(), priority=0)
    return registry
