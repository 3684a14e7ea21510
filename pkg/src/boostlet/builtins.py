"""Built-in boostlets: the filter, visualization-data, and mask pathways."""

from __future__ import annotations

from .manifest import PluginManifest, StepSpec

# 3x3 horizontal-gradient kernel, row-major.
SOBEL_WEIGHTS = (-1, 0, 1, -2, 0, 2, -1, 0, 1)


def builtin_manifests() -> tuple[PluginManifest, ...]:
    """The fixed plugin set shipped with the engine."""
    sobel = PluginManifest(
        id="sobel-edge",
        name="Sobel Edges",
        category="filters",
        description="Horizontal-gradient edge detection with a 3x3 kernel.",
        pipeline=(
            StepSpec("filter", {"kernel": {"size": 3, "weights": list(SOBEL_WEIGHTS)}}),
        ),
    )
    invert = PluginManifest(
        id="invert",
        name="Invert",
        category="filters",
        description="Flip every sample to its 255-complement.",
        pipeline=(StepSpec("invert"),),
    )
    histogram = PluginManifest(
        id="histogram",
        name="Histogram",
        category="data-visualization",
        description="Count the 256 gray levels and emit them as a sidecar artifact.",
        pipeline=(StepSpec("rgba_to_grayscale"), StepSpec("compute_histogram")),
    )
    threshold_mask = PluginManifest(
        id="threshold-mask",
        name="Threshold Mask",
        category="filters",
        description="Highlight the bright half of the gray range with a color overlay.",
        pipeline=(
            StepSpec("rgba_to_grayscale"),
            StepSpec("harden_mask", {"threshold": 128}),
            StepSpec("apply_mask", {"color": [255, 0, 0], "opacity": 0.5}),
        ),
    )
    return (sobel, invert, histogram, threshold_mask)


def find_builtin(plugin_id: str) -> PluginManifest | None:
    for manifest in builtin_manifests():
        if manifest.id == plugin_id:
            return manifest
    return None
