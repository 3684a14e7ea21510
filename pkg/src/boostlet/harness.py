"""Pixel-diff regression pipeline: compare, run fixture cases, gate suites.

A case loads an input PNG into a throwaway file host, runs a manifest with
scripted interactions, and diffs the committed pixels against committed
ground truth. A run fails when more than 5% of the pixels differ; exactly
5% still passes.
"""

from __future__ import annotations

import json
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .builtins import find_builtin
from .codec import decode_png
from .errors import BoostletError, ConfigurationError, ValidationError
from .hosts import FileHost
from .interaction import ScriptedSource
from .manifest import PluginManifest, load_manifest
from .pixels import GRAYSCALE, PixelBuffer, grayscale_to_rgba
from .runtime import OUTCOME_COMMITTED, RunReport, run_plugin

FAIL_ABOVE_FRACTION = 0.05

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class DiffReport:
    """Result of one pixel-wise comparison."""

    total_pixels: int
    differing_pixels: int
    fraction: float
    per_channel_tolerance: int
    verdict: str
    fail_above: float = FAIL_ABOVE_FRACTION
    shape_mismatch: bool = False

    def to_dict(self) -> dict:
        return {
            "total_pixels": self.total_pixels,
            "differing_pixels": self.differing_pixels,
            "fraction": self.fraction,
            "per_channel_tolerance": self.per_channel_tolerance,
            "verdict": self.verdict,
            "fail_above": self.fail_above,
            "shape_mismatch": self.shape_mismatch,
        }


def diff(
    a: PixelBuffer,
    b: PixelBuffer,
    tolerance: int = 0,
    fail_above: float = FAIL_ABOVE_FRACTION,
) -> DiffReport:
    """Count pixels whose channels differ by more than ``tolerance``.

    The verdict fails on a fraction strictly greater than ``fail_above``.
    Mismatched dimensions or channel counts yield maximal discrepancy
    rather than an exception: CI wants a verdict, not a stack trace.
    """
    if not 0 <= tolerance <= 255:
        raise ValidationError(f"tolerance must be a byte value, got {tolerance}")
    if (a.width, a.height, a.channels) != (b.width, b.height, b.channels):
        total = max(a.pixel_count, b.pixel_count)
        return DiffReport(
            total_pixels=total,
            differing_pixels=total,
            fraction=1.0,
            per_channel_tolerance=tolerance,
            verdict=VERDICT_FAIL,
            fail_above=fail_above,
            shape_mismatch=True,
        )
    delta = np.abs(a.to_array().astype(np.int16) - b.to_array().astype(np.int16))
    differing = int(np.count_nonzero((delta > tolerance).any(axis=2)))
    total = a.pixel_count
    fraction = differing / total
    verdict = VERDICT_FAIL if differing > fail_above * total else VERDICT_PASS
    return DiffReport(
        total_pixels=total,
        differing_pixels=differing,
        fraction=fraction,
        per_channel_tolerance=tolerance,
        verdict=verdict,
        fail_above=fail_above,
    )


@dataclass(frozen=True)
class RegressionCase:
    """One fixture-backed regression: input, manifest, interactions, truth."""

    name: str
    input: Path
    manifest: Path | str
    ground_truth: Path
    interactions: tuple = ()
    threshold: float | None = None


_CASE_REQUIRED = ("name", "input", "manifest", "ground_truth")
_CASE_OPTIONAL = ("interactions", "threshold")


def load_case(path: str | Path) -> RegressionCase:
    """Read a case descriptor; relative paths resolve against its directory."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"unreadable case descriptor {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigurationError(f"case descriptor {path} must be a JSON object")
    unknown = set(raw) - set(_CASE_REQUIRED) - set(_CASE_OPTIONAL)
    if unknown:
        raise ConfigurationError(f"case descriptor {path} has unknown fields {sorted(unknown)}")
    missing = [key for key in _CASE_REQUIRED if key not in raw]
    if missing:
        raise ConfigurationError(f"case descriptor {path} is missing fields {missing}")

    base = path.parent
    threshold = raw.get("threshold")
    if threshold is not None and (
        isinstance(threshold, bool)
        or not isinstance(threshold, (int, float))
        or not 0 <= threshold <= 1
    ):
        raise ConfigurationError(f"case {raw['name']!r}: threshold must be in [0, 1]")
    interactions = raw.get("interactions", [])
    if not isinstance(interactions, list):
        raise ConfigurationError(f"case {raw['name']!r}: interactions must be a list")

    manifest_ref = raw["manifest"]
    manifest: Path | str
    if find_builtin(manifest_ref) is not None and not (base / manifest_ref).exists():
        manifest = manifest_ref  # builtin id
    else:
        manifest = (base / manifest_ref).resolve()
    return RegressionCase(
        name=str(raw["name"]),
        input=(base / raw["input"]).resolve(),
        manifest=manifest,
        ground_truth=(base / raw["ground_truth"]).resolve(),
        interactions=tuple(interactions),
        threshold=threshold,
    )


def _resolve_manifest(ref: Path | str) -> PluginManifest:
    if isinstance(ref, str):
        builtin = find_builtin(ref)
        if builtin is None:
            raise ConfigurationError(f"no builtin plugin named {ref!r}")
        return builtin
    if not ref.is_file():
        raise ConfigurationError(f"manifest file {ref} does not exist")
    try:
        return load_manifest(ref.read_bytes())
    except ValidationError as exc:
        raise ConfigurationError(f"invalid manifest {ref}: {exc}") from exc


def run_case(case: RegressionCase) -> tuple[RunReport, DiffReport | None]:
    """Execute one case on a throwaway copy of its input fixture.

    Returns the run report plus the diff against ground truth; the diff is
    None when the run itself did not commit.
    """
    for required in (case.input, case.ground_truth):
        if not Path(required).is_file():
            raise ConfigurationError(f"case {case.name!r}: missing fixture {required}")
    manifest = _resolve_manifest(case.manifest)
    try:
        source = ScriptedSource.from_entries(case.interactions)
    except ValidationError as exc:
        raise ConfigurationError(f"case {case.name!r}: {exc}") from exc

    with tempfile.TemporaryDirectory(prefix="boostlet-case-") as workdir:
        working = Path(workdir) / "surface.png"
        shutil.copyfile(case.input, working)
        host = FileHost(working)
        report = run_plugin(manifest, host, source)
        if report.outcome != OUTCOME_COMMITTED:
            return report, None
        committed = host.get_image()

    truth = decode_png(Path(case.ground_truth).read_bytes())
    if truth.channels == GRAYSCALE:
        truth = grayscale_to_rgba(truth)
    fail_above = case.threshold if case.threshold is not None else FAIL_ABOVE_FRACTION
    return report, diff(committed, truth, fail_above=fail_above)


@dataclass
class CaseResult:
    """Outcome of one case inside a suite run."""

    name: str
    status: str
    reason: str | None = None
    run: RunReport | None = None
    diff: DiffReport | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "reason": self.reason,
            "run": self.run.to_dict() if self.run else None,
            "diff": self.diff.to_dict() if self.diff else None,
        }


@dataclass
class SuiteReport:
    """Aggregate of every case in a suite directory, name-sorted."""

    cases: list[CaseResult]

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.status == STATUS_PASS)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if c.status == STATUS_FAIL)

    @property
    def errors(self) -> int:
        return sum(1 for c in self.cases if c.status == STATUS_ERROR)

    @property
    def success(self) -> bool:
        return all(c.status == STATUS_PASS for c in self.cases)

    @property
    def exit_code(self) -> int:
        """0 = all pass, 1 = regression detected, 2 = broken configuration."""
        if self.errors:
            return 2
        if self.failed:
            return 1
        return 0

    def to_dict(self) -> dict:
        return {
            "total": len(self.cases),
            "passed": self.passed,
            "failed": self.failed,
            "errors": self.errors,
            "success": self.success,
            "cases": [c.to_dict() for c in self.cases],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _run_descriptor(descriptor: Path) -> CaseResult:
    name = descriptor.stem
    try:
        case = load_case(descriptor)
        name = case.name
        report, diff_report = run_case(case)
    except ConfigurationError as exc:
        return CaseResult(name=name, status=STATUS_ERROR, reason=str(exc))
    except BoostletError as exc:
        return CaseResult(name=name, status=STATUS_ERROR, reason=str(exc))
    if report.outcome != OUTCOME_COMMITTED:
        return CaseResult(
            name=name,
            status=STATUS_FAIL,
            reason=f"plugin run {report.outcome}: {report.reason}",
            run=report,
        )
    if diff_report.verdict != VERDICT_PASS:
        reason = (
            "shape mismatch against ground truth"
            if diff_report.shape_mismatch
            else f"diff fraction {diff_report.fraction:.6f} exceeds {diff_report.fail_above}"
        )
        return CaseResult(name=name, status=STATUS_FAIL, reason=reason, run=report, diff=diff_report)
    return CaseResult(name=name, status=STATUS_PASS, run=report, diff=diff_report)


def run_suite(directory: str | Path, workers: int = 1) -> SuiteReport:
    """Execute every case descriptor (``*.json``) in a directory.

    Cases are independent; ``workers > 1`` runs them in parallel. Results
    are merged name-sorted regardless of completion order.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ConfigurationError(f"suite directory {directory} does not exist")
    descriptors = sorted(directory.glob("*.json"))
    if workers > 1 and len(descriptors) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_descriptor, descriptors))
    else:
        results = [_run_descriptor(d) for d in descriptors]
    results.sort(key=lambda r: r.name)
    return SuiteReport(cases=results)


def bundled_suite_path() -> Path:
    """Directory of the regression cases shipped with the package."""
    return Path(resources.files("boostlet") / "fixtures" / "suite")
