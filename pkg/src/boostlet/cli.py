"""Command line: run boostlets headlessly, execute suites, browse the catalog.

Machine-readable output (status lines, reports) goes to stdout; diagnostics
go to stderr. Exit codes: 0 = success/committed, 1 = failed or cancelled
run (or regression detected), 2 = usage or configuration error.
"""

from __future__ import annotations

import json
import shutil
import sys
import tempfile
from pathlib import Path

import click

from .builtins import find_builtin
from .errors import (
    AcquisitionError,
    ConfigurationError,
    NoSurfaceError,
    ValidationError,
)
from .harness import bundled_suite_path, run_suite
from .hosts import default_registry
from .interaction import ScriptedSource
from .manifest import CATEGORIES, PluginManifest, catalog, load_manifest
from .runtime import OUTCOME_COMMITTED, run_plugin


def _fail(message: str, code: int) -> None:
    click.echo(f"boostlet: {message}", err=True)
    sys.exit(code)


def _parse_ints(value: str, expected: int, flag: str) -> tuple[int, ...]:
    parts = value.split(",")
    try:
        numbers = tuple(int(p.strip()) for p in parts)
    except ValueError:
        raise click.BadParameter(f"{flag} expects {expected} comma-separated integers")
    if len(numbers) != expected:
        raise click.BadParameter(f"{flag} expects {expected} comma-separated integers")
    return numbers


def _resolve_plugin(ref: str) -> PluginManifest:
    path = Path(ref)
    if path.is_file():
        try:
            return load_manifest(path.read_bytes())
        except ValidationError as exc:
            raise ConfigurationError(f"invalid manifest {path}: {exc}") from exc
    builtin = find_builtin(ref)
    if builtin is not None:
        return builtin
    raise ConfigurationError(f"{ref!r} is neither a manifest file nor a builtin plugin id")


@click.group()
def main():
    """Host-agnostic image-processing plugins, headless edition."""


@main.command("run")
@click.option("--input", "input_path", required=True, type=click.Path(path_type=Path),
              help="PNG to load into the file host.")
@click.option("--plugin", "plugin_ref", required=True,
              help="Manifest file path or builtin plugin id.")
@click.option("--output", "output_path", required=True, type=click.Path(path_type=Path),
              help="Where the committed PNG is written.")
@click.option("--box", "boxes", multiple=True, metavar="X,Y,W,H",
              help="Scripted box response (repeatable).")
@click.option("--seed", "seeds", multiple=True, metavar="X,Y",
              help="Scripted seed response (repeatable).")
@click.option("--surface", type=int, default=None,
              help="Force a surface index instead of the largest surface.")
@click.option("--report", "report_path", type=click.Path(path_type=Path), default=None,
              help="Write the run report JSON here (plus figures for artifacts).")
def cmd_run(input_path, plugin_ref, output_path, boxes, seeds, surface, report_path):
    """Run one plugin against an image file and write the result."""
    parsed_boxes = [_parse_ints(b, 4, "--box") for b in boxes]
    parsed_seeds = [_parse_ints(s, 2, "--seed") for s in seeds]

    try:
        manifest = _resolve_plugin(plugin_ref)
        if not input_path.is_file():
            raise ConfigurationError(f"input {input_path} does not exist")
        with tempfile.TemporaryDirectory(prefix="boostlet-run-") as workdir:
            working = Path(workdir) / "surface.png"
            shutil.copyfile(input_path, working)
            host = default_registry().detect({"file_host": working}, surface_override=surface)
            source = ScriptedSource(boxes=parsed_boxes, seeds=parsed_seeds)
            report = run_plugin(manifest, host, source)
            committed = host.get_image() if report.outcome == OUTCOME_COMMITTED else None
    except (ConfigurationError, AcquisitionError, NoSurfaceError, ValidationError) as exc:
        _fail(str(exc), 2)
    except OSError as exc:
        _fail(str(exc), 2)

    if committed is not None:
        from .codec import encode_png

        try:
            output_path.write_bytes(encode_png(committed).data)
            if report.histogram is not None:
                sidecar = output_path.with_suffix(".histogram.json")
                sidecar.write_text(json.dumps(list(report.histogram.bins)), encoding="utf-8")
        except OSError as exc:
            _fail(str(exc), 2)

    if report_path is not None:
        try:
            report_path.write_text(report.to_json() + "\n", encoding="utf-8")
            if report.histogram is not None:
                from .figures import render_histogram_figure

                render_histogram_figure(
                    report.histogram.bins,
                    report_path.with_suffix(".histogram.png"),
                    title=manifest.id,
                )
        except OSError as exc:
            _fail(str(exc), 2)

    click.echo(f"{report.outcome}\t{manifest.id}\t{output_path if committed is not None else '-'}")
    if report.outcome != OUTCOME_COMMITTED:
        click.echo(f"boostlet: run {report.outcome}: {report.reason}", err=True)
        sys.exit(1)


@main.command("test")
@click.option("--suite", "suite_dir", required=True, type=click.Path(path_type=Path),
              help="Directory of case descriptors (*.json).")
@click.option("--json", "json_path", type=click.Path(path_type=Path), default=None,
              help="Write the suite report JSON here (plus a diff chart).")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Run cases in parallel.")
def cmd_test(suite_dir, json_path, workers):
    """Run a regression suite and gate on the differing-pixel rule."""
    try:
        suite = run_suite(suite_dir, workers=workers)
    except ConfigurationError as exc:
        _fail(str(exc), 2)

    for case in suite.cases:
        fraction = f"{case.diff.fraction:.6f}" if case.diff else "-"
        reason = case.reason or ""
        click.echo(f"{case.status}\t{case.name}\t{fraction}\t{reason}")
    if json_path is not None:
        try:
            json_path.write_text(suite.to_json() + "\n", encoding="utf-8")
            from .figures import render_suite_figure

            render_suite_figure(suite, json_path.with_suffix(".png"))
        except OSError as exc:
            _fail(str(exc), 2)
    click.echo(
        f"boostlet: {suite.passed} passed, {suite.failed} failed, {suite.errors} errors",
        err=True,
    )
    sys.exit(suite.exit_code)


@main.command("list")
@click.option("--category", type=click.Choice(CATEGORIES), default=None,
              help="Only plugins in this category.")
@click.option("--search", default=None,
              help="Substring filter over plugin name and description.")
def cmd_list(category, search):
    """Print the plugin catalog, one plugin per line."""
    for manifest in catalog(category=category, search=search):
        click.echo(f"{manifest.id}\t{manifest.category}\t{manifest.name}")


@main.command("suite-path")
def cmd_suite_path():
    """Print the path of the bundled regression suite."""
    click.echo(str(bundled_suite_path()))


if __name__ == "__main__":
    main()
