"""entdist CLI main entry point.

This module provides the command-line interface for entdist.
"""

import sys

import click
import structlog

from ..domain.exceptions import EntDistError
from .commands import figure, protocol, search, table1, verify
from .utils import EntDistContext, load_config, setup_logging

VERSION = "0.3.0"


@click.group()
@click.option(
    '--config', '-c',
    type=click.Path(exists=True, dir_okay=False),
    help='Path to a JSON or YAML configuration file',
)
@click.option(
    '--log-level', '-l',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR']),
    default='WARNING',
    help='Set logging level'
)
@click.option(
    '--log-file',
    type=click.Path(),
    help='Also write logs to this file'
)
@click.option(
    '--quiet', '-q',
    is_flag=True,
    help='Suppress log output except errors'
)
@click.option(
    '--verbose', '-v',
    is_flag=True,
    help='Enable debug logging'
)
@click.version_option(version=VERSION, prog_name='entdist')
@click.pass_context
def cli(ctx, config, log_level, log_file, quiet, verbose):
    """entdist - entanglement distribution protocol simulator

    Reproduces the excessive and non-excessive distribution protocols,
    sweeps them over noise and state parameters, and verifies the bounds
    that govern them.
    """
    if verbose:
        log_level = 'DEBUG'
    elif quiet:
        log_level = 'ERROR'

    setup_logging(log_level, log_file)

    try:
        settings = load_config(config)
    except EntDistError as e:
        raise click.UsageError(f"Error loading configuration: {e}") from e

    ctx.obj = EntDistContext(settings, config)
    structlog.get_logger('entdist.cli').info("cli_started", config=config or "defaults")


cli.add_command(figure.figure)
cli.add_command(table1.table1)
cli.add_command(verify.verify)
cli.add_command(protocol.protocol)
cli.add_command(search.search)


@cli.command()
@click.pass_context
def version(ctx):
    """Show detailed version information."""
    import numpy

    click.echo("entdist entanglement distribution simulator")
    click.echo(f"Version: {VERSION}")
    click.echo("Python: " + sys.version.split()[0])
    click.echo(f"NumPy: {numpy.__version__}")
    click.echo(f"\nConfiguration: {ctx.obj.config_path or 'defaults'}")
    click.echo(f"Threads: {ctx.obj.threads}")


def main():
    """Main entry point for the CLI."""
    try:
        exit_code = cli(standalone_mode=False)
        if isinstance(exit_code, int):
            sys.exit(exit_code)
    except click.exceptions.Abort:
        click.echo("\nOperation cancelled by user", err=True)
        sys.exit(130)
    except KeyboardInterrupt:
        click.echo("\nOperation cancelled by user", err=True)
        sys.exit(130)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except EntDistError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"\nUnexpected error: {e}", err=True)
        structlog.get_logger('entdist.cli').exception("unexpected_error")
        sys.exit(1)


if __name__ == '__main__':
    main()
