"""Figure reproduction commands: write the sweep CSV behind each figure."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterator, List, Optional, Tuple

import click
import structlog

from ...adapters.exporters import GnuplotExporter, SweepCSVExporter
from ...domain.exceptions import EntDistError
from ...domain.models import Axis, SweepGrid, SweepResult
from ...domain.services.channels import PARAMETERLESS, channel_family, spec_strength
from ...domain.services.protocols import FIG3_GROUPING, FIG4_GROUPING
from ...domain.services.sweep import DEFAULT_P, sweep
from ..utils import usage_error

logger = structlog.get_logger(__name__)

FIGURES = ("fig3", "fig4", "fig5", "fig7", "fig9", "fig11")
FIG_LOWER_S = 2 / 3

Job = Tuple[str, SweepGrid]


def _unit_axis(name: str, step: float) -> Axis:
    return Axis(name, 0.0, 1.0, step)


def _noise(spec: str, step: float) -> Tuple[str, List[Axis]]:
    """Channel family for the grid and the delta axis it needs (none for fixed channels)."""
    family = channel_family(spec)
    if family in PARAMETERLESS:
        return family, []
    strength = spec_strength(spec)
    if strength is not None:
        return family, [Axis.fixed("delta", strength)]
    return family, [_unit_axis("delta", step)]


def build_jobs(name: str, step: float, channel: Optional[str] = None,
               p: Optional[float] = None, s: Optional[float] = None,
               panel: str = "upper") -> List[Job]:
    """Scenario and grid of every sweep behind a figure."""
    if name in ("fig3", "fig4", "fig5"):
        q_axis = (_unit_axis("q", step),)
        if name == "fig3":
            return [("ame", SweepGrid(q_axis, grouping=FIG3_GROUPING.label()))]
        fig4 = ("ame", SweepGrid(q_axis, grouping=FIG4_GROUPING.label()))
        if name == "fig4":
            return [fig4]
        return [fig4, ("catalysis", SweepGrid(q_axis))]

    if name in ("fig7", "fig9"):
        scenario = "indirect" if name == "fig7" else "direct_then_indirect"
        family, noise_axes = _noise(channel or "dephasing", step)
        if panel == "upper":
            axes = (_unit_axis("s", step), *noise_axes)
            fixed = {"p": DEFAULT_P if p is None else p}
        else:
            axes = (_unit_axis("p", step), *noise_axes)
            fixed = {"s": FIG_LOWER_S if s is None else s}
        return [(scenario, SweepGrid(axes, channel=family, fixed=fixed))]

    if name == "fig11":
        family, noise_axes = _noise(channel or "ad", step)
        axes = (_unit_axis("local_delta", step), *noise_axes)
        fixed = {"p": DEFAULT_P if p is None else p}
        return [("noisy_labs", SweepGrid(axes, channel=family, fixed=fixed))]

    raise click.BadParameter(f"unknown figure {name!r}", param_hint="NAME")


def run_figure(jobs: List[Job], threads: int) -> SweepResult:
    """Evaluate every job and concatenate the rows in job order."""
    result: Optional[SweepResult] = None
    for scenario, grid in jobs:
        part = sweep(grid, scenario, threads)
        result = part if result is None else result.merged(part)
    return result


@contextmanager
def _open_output(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as handle:
        yield handle


@click.command()
@click.argument("name", type=click.Choice(FIGURES))
@click.option("--step", type=float, help="Grid step of every axis (default from config, 0.01)")
@click.option("--channel", help="Channel family or family:strength (fig7, fig9, fig11)")
@click.option("--p", "p", type=float, help="Werner parameter (fig7/fig9 upper panel, fig11)")
@click.option("--s", "s", type=float, help="Ancilla parameter (fig7/fig9 lower panel)")
@click.option(
    "--panel",
    type=click.Choice(["upper", "lower"]),
    default="upper",
    help="fig7/fig9: sweep s at fixed p (upper) or p at fixed s (lower)",
)
@click.option("--output", "-o", help="CSV path, or '-' for stdout (default: <output dir>/<name>.csv)")
@click.option("--gnuplot/--no-gnuplot", default=None, help="Also write a gnuplot script")
@click.pass_context
def figure(ctx, name, step, channel, p, s, panel, output, gnuplot):
    """Write the sweep data behind a figure as CSV."""
    settings = ctx.obj.settings
    step = settings.sweep.step if step is None else step
    gnuplot = settings.output.gnuplot if gnuplot is None else gnuplot
    output = output or str(settings.output.directory / f"{name}.csv")

    try:
        jobs = build_jobs(name, step, channel, p, s, panel)
        for scenario, grid in jobs:
            logger.info("figure_job", figure=name, scenario=scenario, points=grid.size)
        result = run_figure(jobs, ctx.obj.threads)
    except EntDistError as e:
        raise usage_error(e) from e

    with _open_output(output) as handle:
        rows = SweepCSVExporter().export_streaming(iter(result), handle)

    if gnuplot:
        if output == "-":
            raise click.UsageError("--gnuplot needs a CSV file, not stdout")
        script = Path(output).with_suffix(".gp")
        with open(script, "w", encoding="utf-8") as handle:
            GnuplotExporter().export(result, handle, {"data_file": Path(output).name, "title": name})
        click.echo(f"Gnuplot script: {script}", err=True)

    logger.info("figure_written", figure=name, rows=rows, output=output)
    if output != "-":
        click.echo(f"Wrote {rows} rows to {output}", err=True)
