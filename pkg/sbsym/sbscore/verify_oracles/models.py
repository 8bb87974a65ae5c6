from __future__ import annotations

import time
from contextlib import contextmanager
from typing import Iterator, List, Optional, Union

from pydantic import BaseModel, Field

Scalar = Union[bool, int, float, str]


class OracleReport(BaseModel):
    """
    Outcome of one verified claim.
    """

    claim: str  # Short claim id, e.g. "full-sbs-size"
    instance: str  # Group (and subgroups) the claim was checked on
    expected: Scalar
    observed: Scalar
    passed: bool
    elapsed: float = 0.0  # Seconds spent on this claim
    failures: List[str] = Field(default_factory=list)  # Offending instances, if any


class OracleSuite(BaseModel):
    """
    Reports of one `verify` run.
    """

    suite: str
    reports: List[OracleReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failed(self) -> List[OracleReport]:
        return [r for r in self.reports if not r.passed]


class Stopwatch:
    elapsed: float = 0.0


@contextmanager
def stopwatch() -> Iterator[Stopwatch]:
    sw = Stopwatch()
    start = time.perf_counter()
    try:
        yield sw
    finally:
        sw.elapsed = round(time.perf_counter() - start, 6)


def report(
    claim: str,
    instance: str,
    expected: Scalar,
    observed: Scalar,
    elapsed: float = 0.0,
    failures: Optional[List[str]] = None,
    tol: float = 1e-8,
) -> OracleReport:
    """Build a report; floats compare within ``tol``, everything else exactly."""
    if isinstance(expected, float) or isinstance(observed, float):
        ok = abs(float(expected) - float(observed)) <= tol
    else:
        ok = expected == observed and type(expected) is type(observed)
    return OracleReport(
        claim=claim,
        instance=instance,
        expected=expected,
        observed=observed,
        passed=bool(ok) and not failures,
        elapsed=elapsed,
        failures=list(failures or []),
    )
