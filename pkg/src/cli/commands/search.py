"""Random search for states that violate the qubit-A bounds."""

import click
import structlog

from ...adapters.storage import FileWitnessRepository
from ...domain.exceptions import EntDistError
from ...domain.services.search import ResidualKind, search_witnesses
from ..utils import format_table, usage_error

logger = structlog.get_logger(__name__)


@click.command()
@click.option("--da", "d_a", type=int, required=True, help="Dimension of subsystem A")
@click.option("--trials", type=int, default=1000, show_default=True, help="Haar samples to draw")
@click.option("--seed", type=int, help="Root seed (default from config, 7)")
@click.option(
    "--residual",
    type=click.Choice([kind.value for kind in ResidualKind]),
    default=ResidualKind.THEOREM1.value,
    show_default=True,
    help="theorem1: negativity bound; theorem2: log-negativity bound",
)
@click.option("--max-witnesses", type=int, help="Stop after this many witnesses")
@click.option("--output-dir", "-o", type=click.Path(file_okay=False),
              help="Directory for witness JSON files (default: <output dir>/witnesses)")
@click.option("--compress", is_flag=True, help="gzip the witness files")
@click.pass_context
def search(ctx, d_a, trials, seed, residual, max_witnesses, output_dir, compress):
    """Sample Haar states on [d_A,2,2] and store every violation found."""
    settings = ctx.obj.settings
    seed = settings.verify.seed if seed is None else seed
    output_dir = output_dir or str(settings.output.directory / "witnesses")

    try:
        witnesses = search_witnesses(d_a, trials, seed, ResidualKind(residual),
                                     ctx.obj.threads, max_witnesses)
    except EntDistError as e:
        raise usage_error(e) from e

    click.echo(f"{len(witnesses)} witness(es) among {trials} trials (d_A={d_a}, seed={seed})")
    if not witnesses:
        return

    repository = FileWitnessRepository(output_dir, compress=compress)
    ids = repository.save_batch(witnesses)
    rows = [
        [w.trial, w.trial_seed, f"{w.residual:.6g}", repository.witness_id(w)] for w in witnesses
    ]
    click.echo(format_table(["trial", "trial_seed", "residual", "file"], rows))
    logger.info("witnesses_saved", count=len(ids), directory=output_dir)
