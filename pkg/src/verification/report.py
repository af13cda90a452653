"""Verification monitoring: per-criterion outcomes and suite metrics."""

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import structlog

from ..domain.exceptions import EntDistError

CheckOutcome = Tuple[bool, str]


@dataclass(frozen=True)
class VerifyOptions:
    """Sample sizes, seed and tolerance override shared by the suites."""

    trials: int = 1000
    seed: int = 7
    tol: Optional[float] = None
    threads: int = 1

    def golden_tol(self, default: float) -> float:
        """Tolerance for a golden-value comparison, honouring the override."""
        return default if self.tol is None else self.tol


@dataclass
class CriterionResult:
    """Outcome of one verification criterion."""

    criterion_id: str
    title: str
    passed: bool
    detail: str
    informational: bool = False
    duration: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.passed:
            return "PASS"
        return "INFO" if self.informational else "FAIL"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.criterion_id,
            "title": self.title,
            "status": self.status,
            "passed": self.passed,
            "informational": self.informational,
            "detail": self.detail,
        }


@dataclass
class SuiteMetrics:
    """Counts over the criteria run so far."""

    total: int = 0
    passed: int = 0
    failed: int = 0
    informational_failures: int = 0

    @property
    def pass_rate(self) -> float:
        if self.total == 0:
            return 100.0
        return (self.passed / self.total) * 100


class VerificationMonitor:
    """Runs criteria, records their results and raises alerts on failures."""

    def __init__(self, suite: str):
        self.suite = suite
        self.results: List[CriterionResult] = []
        self.metrics = SuiteMetrics()
        self.logger = structlog.get_logger(__name__).bind(suite=suite)
        self.alert_callbacks: List[Callable[[CriterionResult], None]] = []

    def add_alert_callback(self, callback: Callable[[CriterionResult], None]) -> None:
        """Call `callback` with every failing result."""
        self.alert_callbacks.append(callback)

    def record(self, result: CriterionResult) -> CriterionResult:
        self.results.append(result)
        self.metrics.total += 1
        if result.passed:
            self.metrics.passed += 1
            self.logger.info("criterion_passed", criterion=result.criterion_id,
                             duration=round(result.duration, 3))
        elif result.informational:
            self.metrics.informational_failures += 1
            self.logger.warning("criterion_informational", criterion=result.criterion_id,
                                detail=result.detail)
        else:
            self.metrics.failed += 1
            self.logger.error("criterion_failed", criterion=result.criterion_id,
                              detail=result.detail)
        if not result.passed:
            for callback in self.alert_callbacks:
                callback(result)
        return result

    def check(self, criterion_id: str, title: str, check: Callable[[], CheckOutcome],
              informational: bool = False) -> CriterionResult:
        """Run one check; an EntDistError or numerical failure counts as a failed result."""
        started = time.perf_counter()
        try:
            passed, detail = check()
        except (EntDistError, ArithmeticError, ValueError) as e:
            passed, detail = False, f"{e.__class__.__name__}: {e}"
        duration = time.perf_counter() - started
        return self.record(
            CriterionResult(criterion_id, title, bool(passed), detail, informational, duration)
        )

    @property
    def all_passed(self) -> bool:
        """True when every non-informational criterion passed."""
        return all(r.passed or r.informational for r in self.results)

    def result(self, criterion_id: str) -> Optional[CriterionResult]:
        for r in self.results:
            if r.criterion_id == criterion_id:
                return r
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.all_passed,
            "metrics": {
                "total": self.metrics.total,
                "passed": self.metrics.passed,
                "failed": self.metrics.failed,
                "informational_failures": self.metrics.informational_failures,
                "pass_rate": round(self.metrics.pass_rate, 2),
            },
            "criteria": [r.to_dict() for r in self.results],
        }

    def render_text(self) -> str:
        lines = [f"Verification suite: {self.suite}", "=" * 60]
        for r in self.results:
            lines.append(f"[{r.status}] {r.criterion_id} {r.title}")
            if r.detail:
                lines.append(f"       {r.detail}")
        lines.append("-" * 60)
        lines.append(
            f"{self.metrics.passed}/{self.metrics.total} passed, "
            f"{self.metrics.failed} failed, "
            f"{self.metrics.informational_failures} informational"
        )
        lines.append("RESULT: " + ("PASS" if self.all_passed else "FAIL"))
        return "\n".join(lines)
