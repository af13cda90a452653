"""Verification suites: acceptance criteria and structural invariants."""

from typing import Callable, Dict

from .acceptance import CRITERIA, run_acceptance_suite
from .properties import PROPERTIES, run_property_suite
from .report import CriterionResult, SuiteMetrics, VerificationMonitor, VerifyOptions

SUITES: Dict[str, Callable[[VerifyOptions], VerificationMonitor]] = {
    "paper": run_acceptance_suite,
    "properties": run_property_suite,
}

__all__ = [
    'CRITERIA',
    'CriterionResult',
    'PROPERTIES',
    'SUITES',
    'SuiteMetrics',
    'VerificationMonitor',
    'VerifyOptions',
    'run_acceptance_suite',
    'run_property_suite',
]
