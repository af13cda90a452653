"""Verification commands: acceptance criteria and invariant suites."""

import json

import click

from ...verification import SUITES, VerifyOptions


@click.command()
@click.argument("suite", type=click.Choice(["paper", "properties", "all"]), default="all")
@click.option("--trials", type=int, help="Monte-Carlo sample size (default from config, 1000)")
@click.option("--seed", type=int, help="Root seed (default from config, 7)")
@click.option("--tol", type=float, help="Override the golden-value tolerances")
@click.option(
    "--format", "-f", "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    help="Report format",
)
@click.pass_context
def verify(ctx, suite, trials, seed, tol, fmt):
    """Run verification suites; exit 1 when a criterion fails."""
    settings = ctx.obj.settings.verify
    options = VerifyOptions(
        trials=settings.trials if trials is None else trials,
        seed=settings.seed if seed is None else seed,
        tol=settings.tol if tol is None else tol,
        threads=ctx.obj.threads,
    )
    if options.trials < 1:
        raise click.BadParameter("must be positive", param_hint="--trials")
    if options.tol is not None and options.tol <= 0:
        raise click.BadParameter("must be positive", param_hint="--tol")

    names = list(SUITES) if suite == "all" else [suite]
    monitors = [SUITES[name](options) for name in names]

    if fmt == "json":
        report = {
            "options": {"trials": options.trials, "seed": options.seed, "tol": options.tol},
            "passed": all(m.all_passed for m in monitors),
            "suites": [m.to_dict() for m in monitors],
        }
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        click.echo("\n\n".join(m.render_text() for m in monitors))

    if not all(m.all_passed for m in monitors):
        ctx.exit(1)
