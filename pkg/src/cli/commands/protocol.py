"""Evaluate a single protocol and print its record as JSON."""

import io
from typing import Any, Dict, Optional

import click
import structlog

from ...adapters.exporters import RecordJSONExporter
from ...domain.exceptions import EntDistError
from ...domain.models import Grouping, MeasureKind, ProtocolRecord
from ...domain.services.channels import channel_from_spec
from ...domain.services.protocols import (
    FIG3_GROUPING,
    CommunicationTiming,
    ame_protocol,
    catalysis_compare,
    direct_gain,
    direct_then_indirect,
    indirect_noisy,
    noisy_labs,
)
from ...domain.services.sweep import DEFAULT_P
from ..utils import usage_error

logger = structlog.get_logger(__name__)

SCENARIOS = ("ame", "catalysis", "indirect", "direct_then_indirect", "noisy_labs")


def evaluate(scenario: str, q: Optional[float], p: float, s: float, channel: str,
             delta: Optional[float], local_delta: float, grouping: Optional[str],
             measure: str, swap: bool, timing: str) -> Dict[str, Any]:
    """Record of one protocol run plus scenario-specific details."""
    details: Dict[str, Any] = {}
    if scenario in ("ame", "catalysis"):
        if q is None:
            raise click.UsageError(f"{scenario} needs --q")
        if scenario == "catalysis":
            plain, record = catalysis_compare(q)
            details["without_catalysis"] = plain.classification.value
        else:
            parsed = Grouping.parse(grouping) if grouping else FIG3_GROUPING
            record = ame_protocol(q, parsed, MeasureKind.parse(measure), swap=swap)
        return {"record": record, "details": details}

    kraus = channel_from_spec(channel, delta)
    when = CommunicationTiming(timing)
    if scenario == "indirect":
        record: ProtocolRecord = indirect_noisy(p, s, kraus, when)
    elif scenario == "direct_then_indirect":
        e_after_direct, record = direct_then_indirect(p, s, kraus, when)
        details["e_after_direct"] = e_after_direct
        details["direct_gain"] = direct_gain(p, kraus)
    else:
        record = noisy_labs(p, kraus, local_delta, when)
    details["channel"] = kraus.spec()
    return {"record": record, "details": details}


@click.command()
@click.argument("scenario", type=click.Choice(SCENARIOS))
@click.option("--q", "q", type=float, help="Depolarising parameter of ρ(q) (ame, catalysis)")
@click.option("--p", "p", type=float, default=DEFAULT_P, show_default=True, help="Werner parameter")
@click.option("--s", "s", type=float, default=1.0, show_default=True, help="Ancilla parameter")
@click.option("--channel", default="identity", show_default=True,
              help="Channel family or family:strength")
@click.option("--delta", type=float, help="Channel strength for a bare family name")
@click.option("--local-delta", type=float, default=0.0, show_default=True,
              help="Amplitude damping in the idle labs (noisy_labs)")
@click.option("--grouping", help="A:B:C grouping with 1-based labels, e.g. 1,4,5:2:3 (ame)")
@click.option("--measure", default="log_negativity", show_default=True,
              help="negativity, log_negativity, von_neumann or linear_entropy (ame)")
@click.option("--swap", is_flag=True, help="Exchange the roles of B and C (ame)")
@click.option("--timing", type=click.Choice(["after", "before"]), default="after",
              show_default=True, help="Evaluate E_com after or before the channel")
@click.option("--details", is_flag=True, help="Wrap the record with scenario details")
def protocol(scenario, q, p, s, channel, delta, local_delta, grouping, measure, swap,
             timing, details):
    """Evaluate one protocol and print its record as JSON."""
    try:
        outcome = evaluate(scenario, q, p, s, channel, delta, local_delta, grouping,
                           measure, swap, timing)
    except EntDistError as e:
        raise usage_error(e) from e
    except ValueError as e:
        raise click.UsageError(str(e)) from e

    record = outcome["record"]
    logger.info("protocol_evaluated", scenario=scenario,
                classification=record.classification.value)

    buffer = io.StringIO()
    metadata = {"scenario": scenario, **outcome["details"]} if details else None
    RecordJSONExporter().export([record], buffer, metadata)
    click.echo(buffer.getvalue(), nl=False)
