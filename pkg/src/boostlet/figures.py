"""Figure rendering for the CLI report path (headless matplotlib backend)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import STATUS_PASS, SuiteReport


def render_histogram_figure(bins: Sequence[int], path: str | Path, title: str = "") -> Path:
    """Save a 256-bin bar chart next to the machine-readable sidecar."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(range(256), list(bins), width=1.0, color="#3b4a5a")
    ax.set_xlim(-0.5, 255.5)
    ax.set_xlabel("sample value")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_suite_figure(report: SuiteReport, path: str | Path) -> Path:
    """Save a per-case diff-fraction chart with the failure threshold marked."""
    path = Path(path)
    names = [case.name for case in report.cases]
    fractions = [case.diff.fraction if case.diff else 1.0 for case in report.cases]
    colors = ["#2e7d32" if case.status == STATUS_PASS else "#c62828" for case in report.cases]

    height = max(2.0, 0.45 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(7, height))
    if names:
        positions = range(len(names))
        ax.barh(positions, fractions, color=colors)
        ax.set_yticks(list(positions))
        ax.set_yticklabels(names)
        ax.invert_yaxis()
        thresholds = {case.diff.fail_above for case in report.cases if case.diff}
        for threshold in sorted(thresholds) or [0.05]:
            ax.axvline(threshold, color="#555", linestyle="--", linewidth=1)
        ax.set_xlabel("differing pixel fraction")
    else:
        ax.text(0.5, 0.5, "no cases", ha="center", va="center")
        ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
