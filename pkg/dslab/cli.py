"""Command line entry point: run experiments and the standalone analyses."""

import functools
from typing import Optional

import click

from dslab.core.exceptions import DSLabError
from dslab.enums.types import ExactSolution, SliceAxis
from dslab.services.analysis import compare_profile, fit_blowup, singularity_reached, trace_field
from dslab.services.harness import (
    ExperimentService,
    list_bundled_configs,
    load_run_config,
    read_series,
    read_snapshot,
)


def _echo_pairs(pairs):
    for key, value in pairs:
        click.echo(f"{key} = {value}")


def handle_errors(func):
    """DSLabError -> message on stderr, exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except DSLabError as e:
            raise click.ClickException(str(e))

    return wrapper


@click.group()
def main():
    """Spectral blow-up lab for the focusing Davey-Stewartson II equation."""


@main.command(name="list")
def list_configs():
    """List the bundled experiment configs."""
    for name in list_bundled_configs():
        click.echo(name)


@main.command()
@click.argument("config")
@click.option("--output-dir", default=None, help="Directory for series, snapshots and report")
@click.option("--n", "grid_n", type=int, default=None, help="Override grid size N")
@handle_errors
def run(config: str, output_dir: Optional[str], grid_n: Optional[int]):
    """Run an experiment from a YAML file or a bundled config name."""
    cfg = load_run_config(config)
    overrides = {}
    if output_dir:
        overrides["output_dir"] = output_dir
    if grid_n:
        overrides["grid"] = {"D": cfg.grid.D, "N": grid_n}
    if overrides:
        cfg = load_run_config(config, overrides)
    report = ExperimentService().run_experiment(cfg)
    pairs = [
        ("run_id", report.run_id),
        ("stop_reason", report.stop_reason.value),
        ("last_valid_time", repr(report.last_valid_time)),
        ("output_dir", report.output_dir),
    ]
    if report.fit:
        pairs += [("t_star", repr(report.fit.t_star)), ("gamma", repr(report.fit.gamma))]
    if report.fit_error:
        pairs.append(("fit_error", report.fit_error))
    _echo_pairs(pairs)


@main.command()
@click.argument("series", type=click.Path())
@click.option("--window", default=1000, show_default=True, help="Number of trailing records to fit")
@handle_errors
def fit(series: str, window: int):
    """Blow-up fit ln|psi|_inf = alpha + gamma ln(t* - t) on a series file."""
    result = fit_blowup(read_series(series), window)
    _echo_pairs(
        [
            ("alpha", repr(result.alpha)),
            ("gamma", repr(result.gamma)),
            ("t_star", repr(result.t_star)),
            ("residual", repr(result.residual)),
            ("window", f"{result.window[0]}, {result.window[1]}"),
        ]
    )


@main.command()
@click.argument("snapshot", type=click.Path())
@click.option("--axis", type=click.Choice([a.value for a in SliceAxis]), default="xi1", show_default=True)
@click.option("--kmin", type=float, default=None, help="Lower end of the fit window")
@click.option("--kmax", type=float, default=None, help="Upper end of the fit window")
@click.option("--envelope", type=int, default=8, show_default=True, help="Envelope block width (1 = off)")
@handle_errors
def trace(snapshot: str, axis: str, kmin: Optional[float], kmax: Optional[float], envelope: int):
    """Fit mu and delta from the Fourier tail of a snapshot."""
    snap = read_snapshot(snapshot)
    result = trace_field(snap.field, SliceAxis(axis), kmin, kmax, envelope)
    _echo_pairs(
        [
            ("t", repr(snap.t)),
            ("mu", repr(result.mu)),
            ("delta", repr(result.delta)),
            ("const_term", repr(result.const_term)),
            ("k_range", f"{result.k_range[0]}, {result.k_range[1]}"),
            ("rms_residual", repr(result.rms_residual)),
            ("flagged", result.flagged),
            ("singularity_reached", singularity_reached(result, snap.field.grid)),
        ]
    )


@main.command()
@click.argument("snapshot", type=click.Path())
@click.option("--stationary/--no-stationary", default=False, help="Also evaluate the stationary residual")
@handle_errors
def profile(snapshot: str, stationary: bool):
    """Compare |psi| of a snapshot with the rescaled lump."""
    snap = read_snapshot(snapshot)
    result = compare_profile(snap.field, with_stationary=stationary)
    pairs = [
        ("t", repr(snap.t)),
        ("x0", repr(result.frame.x0)),
        ("y0", repr(result.frame.y0)),
        ("L", repr(result.frame.L)),
        ("multi_peak", result.frame.multi_peak),
        ("ratio", repr(result.ratio)),
    ]
    if result.stationary_ratio is not None:
        pairs.append(("stationary_ratio", repr(result.stationary_ratio)))
    _echo_pairs(pairs)


@main.command()
@click.argument("config")
@click.option("--solution", type=click.Choice([s.value for s in ExactSolution]), required=True)
@click.option("--output-dir", default=None, help="Write exact_compare.csv and series.csv here")
@handle_errors
def exact(config: str, solution: str, output_dir: Optional[str]):
    """Run a config against its closed-form solution."""
    cfg = load_run_config(config, {"output_dir": output_dir} if output_dir else None)
    frame = ExperimentService().exact_compare(cfg, ExactSolution(solution))
    _echo_pairs(
        [
            ("records", len(frame)),
            ("max_rel_error", repr(float(frame["rel_error"].max())) if len(frame) else "nan"),
            ("final_rel_error", repr(float(frame["rel_error"].iloc[-1])) if len(frame) else "nan"),
        ]
    )


if __name__ == "__main__":
    main()
