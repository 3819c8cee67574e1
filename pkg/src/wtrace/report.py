"""Pass/fail records for verification suites."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .gradop import GradedOperator, first_difference


@dataclass
class Case:
    params: dict
    passed: bool
    witness_degree: Optional[int] = None
    data: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"params": self.params, "pass": self.passed}
        if self.witness_degree is not None:
            out["witness_degree"] = self.witness_degree
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def first_failure(self) -> Optional[Case]:
        return next((c for c in self.cases if not c.passed), None)

    def to_json(self) -> dict:
        out = {"suite": self.suite, "pass": self.passed,
               "cases": [c.to_json() for c in self.cases]}
        bad = self.first_failure()
        if bad is not None:
            out["first_failure"] = bad.to_json()
        return out


# a pending case: params plus a thunk producing the finished Case
Pending = tuple


def operator_case(params: dict, lhs: Callable[[], GradedOperator],
                  rhs: Callable[[], GradedOperator], max_degree: int) -> Pending:
    def run() -> Case:
        d = first_difference(lhs(), rhs(), max_degree)
        return Case(params, d is None, d)
    return params, run


def flag_case(params: dict, check: Callable[[], object]) -> Pending:
    """``check`` returns a bool or a ``(bool, data)`` pair."""
    def run() -> Case:
        res = check()
        if isinstance(res, tuple):
            return Case(params, bool(res[0]), None, res[1])
        return Case(params, bool(res))
    return params, run


def run_suite(name: str, pending: Sequence[Pending], jobs: int = 1) -> SuiteReport:
    """Execute pending cases, optionally in a thread pool; order is preserved."""
    thunks = [run for _, run in pending]
    if jobs > 1 and len(thunks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(lambda f: f(), thunks))
    else:
        cases = [f() for f in thunks]
    return SuiteReport(name, cases)
