"""Plugin manifests: strict parsing, per-op parameter validation, cataloging.

A boostlet is described declaratively: an identity, a category, and an
ordered pipeline of engine operations. Keeping plugins declarative (rather
than injected scripts) is what makes the engine sandboxed and testable;
free-form scripting belongs to interactive frontends.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .errors import ValidationError
from .pixels import Kernel

CATEGORIES = ("data-visualization", "filters", "llms", "machine-learning")

OPS = (
    "filter",
    "rgba_to_grayscale",
    "grayscale_to_rgba",
    "harden_mask",
    "apply_mask",
    "compute_histogram",
    "crop",
    "http_infer",
    "invert",
)

_NO_PARAM_OPS = {"rgba_to_grayscale", "grayscale_to_rgba", "compute_histogram", "invert"}

DEFAULT_OVERLAY_COLOR = (255, 0, 0)
DEFAULT_OVERLAY_OPACITY = 0.5


@dataclass(frozen=True)
class InteractionNeeds:
    """Interactions a plugin declares up front: a box and/or n seed points."""

    box: bool = False
    seeds: int = 0

    def to_entries(self) -> list:
        entries: list = []
        if self.box:
            entries.append("box")
        if self.seeds:
            entries.append({"seeds": self.seeds})
        return entries


@dataclass(frozen=True)
class StepSpec:
    """One pipeline step: an engine operation plus its parameters."""

    op: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))
        if self.op not in OPS:
            raise ValidationError(f"unknown op {self.op!r}; expected one of {OPS}")
        _validate_params(self.op, self.params)


@dataclass(frozen=True)
class PluginManifest:
    """Declarative description of a boostlet."""

    id: str
    name: str
    category: str
    pipeline: tuple[StepSpec, ...]
    description: str = ""
    interactions: InteractionNeeds = InteractionNeeds()

    def __post_init__(self):
        if not self.id:
            raise ValidationError("manifest id must be non-empty")
        if self.category not in CATEGORIES:
            raise ValidationError(
                f"unknown category {self.category!r}; expected one of {CATEGORIES}"
            )
        object.__setattr__(self, "pipeline", tuple(self.pipeline))
        if not self.pipeline:
            raise ValidationError("pipeline must contain at least one step")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "category": self.category,
            "description": self.description,
            "pipeline": [
                {"op": step.op, "params": dict(step.params)} for step in self.pipeline
            ],
            "interactions": self.interactions.to_entries(),
        }


def _require_keys(params: Mapping, allowed: Iterable[str], op: str) -> None:
    unknown = set(params) - set(allowed)
    if unknown:
        raise ValidationError(f"op {op!r} got unknown params {sorted(unknown)}")


def _validate_color(value) -> tuple[int, int, int]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 3
        or any(not isinstance(c, int) or isinstance(c, bool) or not 0 <= c <= 255 for c in value)
    ):
        raise ValidationError(f"color must be three byte values, got {value!r}")
    return tuple(value)


def _validate_opacity(value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0 <= value <= 1:
        raise ValidationError(f"opacity must be a number in [0, 1], got {value!r}")
    return float(value)


def _validate_params(op: str, params: Mapping[str, Any]) -> None:
    if op in _NO_PARAM_OPS:
        _require_keys(params, (), op)
        return
    if op == "filter":
        _require_keys(params, ("kernel",), op)
        kernel = params.get("kernel")
        if not isinstance(kernel, Mapping) or set(kernel) != {"size", "weights"}:
            raise ValidationError(
                f"op 'filter' needs a kernel with 'size' and 'weights', got {kernel!r}"
            )
        Kernel(kernel["size"], tuple(kernel["weights"]))
    elif op == "harden_mask":
        _require_keys(params, ("threshold", "color", "opacity"), op)
        threshold = params.get("threshold", 128)
        if isinstance(threshold, bool) or not isinstance(threshold, int) or not 0 <= threshold <= 255:
            raise ValidationError(f"threshold must be a byte value, got {threshold!r}")
        if "color" in params:
            _validate_color(params["color"])
        if "opacity" in params:
            _validate_opacity(params["opacity"])
    elif op == "apply_mask":
        _require_keys(params, ("color", "opacity"), op)
        if "color" in params:
            _validate_color(params["color"])
        if "opacity" in params:
            _validate_opacity(params["opacity"])
    elif op == "crop":
        _require_keys(params, ("rect",), op)
        rect = params.get("rect")
        if rect is not None and (
            not isinstance(rect, (list, tuple))
            or len(rect) != 4
            or any(not isinstance(v, int) or isinstance(v, bool) for v in rect)
        ):
            raise ValidationError(f"rect must be four integers, got {rect!r}")
    elif op == "http_infer":
        _require_keys(params, ("url", "response", "timeout", "content_type"), op)
        url = params.get("url")
        if not isinstance(url, str) or not url:
            raise ValidationError("op 'http_infer' needs a non-empty url")
        response = params.get("response", "image")
        if response not in ("image", "mask"):
            raise ValidationError(f"http_infer response must be image|mask, got {response!r}")
        timeout = params.get("timeout")
        if timeout is not None and (
            isinstance(timeout, bool) or not isinstance(timeout, (int, float)) or timeout <= 0
        ):
            raise ValidationError(f"timeout must be > 0, got {timeout!r}")


def _parse_interactions(entries) -> InteractionNeeds:
    if not isinstance(entries, list):
        raise ValidationError(f"interactions must be a list, got {type(entries).__name__}")
    box = False
    seeds = 0
    for entry in entries:
        if entry == "box":
            if box:
                raise ValidationError("interaction 'box' declared twice")
            box = True
        elif isinstance(entry, Mapping) and set(entry) == {"seeds"}:
            count = entry["seeds"]
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise ValidationError(f"seeds count must be an integer >= 1, got {count!r}")
            if seeds:
                raise ValidationError("interaction 'seeds' declared twice")
            seeds = count
        else:
            raise ValidationError(f"unknown interaction declaration {entry!r}")
    return InteractionNeeds(box=box, seeds=seeds)


_MANIFEST_REQUIRED = ("id", "name", "category", "pipeline")
_MANIFEST_OPTIONAL = ("description", "interactions")


def load_manifest(data: bytes | str) -> PluginManifest:
    """Parse and validate a UTF-8 JSON manifest document.

    Unknown fields anywhere in the document are rejected: a typo in a
    manifest should fail loudly, not silently change behavior.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ValidationError(f"manifest is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("manifest must be a JSON object")

    unknown = set(raw) - set(_MANIFEST_REQUIRED) - set(_MANIFEST_OPTIONAL)
    if unknown:
        raise ValidationError(f"manifest has unknown fields {sorted(unknown)}")
    missing = [key for key in _MANIFEST_REQUIRED if key not in raw]
    if missing:
        raise ValidationError(f"manifest is missing required fields {missing}")
    for key in ("id", "name", "category"):
        if not isinstance(raw[key], str):
            raise ValidationError(f"manifest field {key!r} must be a string")
    if not isinstance(raw["pipeline"], list):
        raise ValidationError("manifest pipeline must be a list of steps")

    steps = []
    for index, entry in enumerate(raw["pipeline"]):
        if not isinstance(entry, Mapping):
            raise ValidationError(f"pipeline step {index} must be an object")
        extra = set(entry) - {"op", "params"}
        if extra:
            raise ValidationError(f"pipeline step {index} has unknown fields {sorted(extra)}")
        if "op" not in entry:
            raise ValidationError(f"pipeline step {index} is missing 'op'")
        params = entry.get("params", {})
        if not isinstance(params, Mapping):
            raise ValidationError(f"pipeline step {index} params must be an object")
        steps.append(StepSpec(entry["op"], params))

    description = raw.get("description", "")
    if not isinstance(description, str):
        raise ValidationError("manifest description must be a string")
    return PluginManifest(
        id=raw["id"],
        name=raw["name"],
        category=raw["category"],
        description=description,
        pipeline=tuple(steps),
        interactions=_parse_interactions(raw.get("interactions", [])),
    )


def catalog(
    extra: Sequence[PluginManifest] = (),
    category: str | None = None,
    search: str | None = None,
) -> list[PluginManifest]:
    """Stable listing of built-ins plus loaded manifests.

    Grouped by category (alphabetical), name-sorted within a category.
    ``search`` filters by case-insensitive substring over name and
    description; ``category`` must be one of the closed set. Filters
    compose (AND).
    """
    from .builtins import builtin_manifests  # late import to avoid a cycle

    if category is not None and category not in CATEGORIES:
        raise ValidationError(
            f"unknown category {category!r}; expected one of {CATEGORIES}"
        )
    entries = list(builtin_manifests()) + list(extra)
    entries.sort(key=lambda m: (m.category, m.name.lower(), m.id))
    if category is not None:
        entries = [m for m in entries if m.category == category]
    if search:
        needle = search.lower()
        entries = [
            m
            for m in entries
            if needle in m.name.lower() or needle in m.description.lower()
        ]
    return entries
