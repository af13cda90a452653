"""Separability table of the depolarised AME state."""

import csv
import sys
from typing import List

import click

from ...domain.exceptions import EntDistError
from ...domain.models.record import format_float
from ...domain.services.protocols import TABLE1_PARTITIONS, table1_expected, table1_scan
from ..utils import format_table, usage_error

DEFAULT_QS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.55, 0.6, 0.7, 0.8, 0.9)


@click.command()
@click.option("--q", "qs", type=float, multiple=True, help="Evaluate at this q (repeatable)")
@click.option(
    "--format", "-f", "fmt",
    type=click.Choice(["table", "csv"]),
    default="table",
    help="Output format",
)
@click.option("--negativities", is_flag=True, help="Show negativities next to PPT/NPT")
def table1(qs, fmt, negativities):
    """PPT/NPT pattern of ρ(q) over six bipartitions."""
    qs = qs or DEFAULT_QS
    headers = ["q"] + list(TABLE1_PARTITIONS) + ["matches"]
    rows: List[List[str]] = []
    try:
        for q in qs:
            entries = table1_scan(q)
            observed = {e.partition: e.status for e in entries}
            cells = [
                f"{e.status} ({format_float(e.negativity)})" if negativities else e.status
                for e in entries
            ]
            matches = "yes" if observed == table1_expected(q) else "no"
            rows.append([format_float(q)] + cells + [matches])
    except EntDistError as e:
        raise usage_error(e) from e

    if fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
    else:
        click.echo(format_table(headers, rows))
