"""Acceptance criteria 1-10, exact (tolerance zero)."""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from wtrace import daha, series, traceh
from wtrace.cli import main
from wtrace.verify import (RunConfig, suite_bubbles, suite_heisenberg, suite_pq, suite_psi,
                           suite_series, suite_virasoro, suite_walg)

D = 8


def record(n: int, ok: bool, detail: str = "") -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _describe(rep):
    bad = rep.first_failure()
    base = f"{len(rep.cases)} cases"
    return base if bad is None else f"{base}, first failure {bad.params} at degree {bad.witness_degree}"


def test_criterion_01_walgebra_relations():
    start = time.perf_counter()
    walg = suite_walg(RunConfig(max_degree=D, l_max=3, k_max=3))
    heis = suite_heisenberg(RunConfig(max_degree=D))
    w_side = [c for c in heis.cases if c.params["side"] == "W"]
    grid = [c for c in walg.cases if c.params.get("relation") == "structure"]
    elapsed = time.perf_counter() - start
    ok = walg.passed and all(c.passed for c in w_side) and len(grid) == 7 * 7 * 4 * 4 \
        and len(w_side) == 100 and elapsed < 60
    record(1, ok, f"{_describe(walg)}, {len(w_side)} Heisenberg, {elapsed:.1f}s")


def test_criterion_02_virasoro():
    rep = suite_virasoro(RunConfig(max_degree=D))
    central = [c for c in rep.cases if c.params.get("relation") == "central_l2"][0]
    record(2, rep.passed and central.data == {"central": "1/2"}, _describe(rep))


def test_criterion_03_trace_lemmas():
    start = time.perf_counter()
    plan = [("heisenberg", 5), ("virasoro_half", 4), ("mixed_n1m0", 4), ("mixed_-m1n0", 4),
            ("mixed_n1-m0", 4), ("mixed_-m1n1", 4), ("heisenberg_virasoro", 3)]
    reports = [traceh.lemma_suite(name, bound, D) for name, bound in plan]
    elapsed = time.perf_counter() - start
    bad = [r.suite for r in reports if not r.passed]
    total = sum(len(r.cases) for r in reports)
    record(3, not bad and elapsed < 300, f"{total} cases, failing {bad}, {elapsed:.1f}s")


def test_criterion_04_bubbles():
    rep = suite_bubbles(RunConfig(max_degree=D))
    needed = {"ctilde2=c0", "ctilde3=c1", "ctilde4=c2+c0^2", "A2=2c0", "c0=degree"}
    seen = {c.params["relation"] for c in rep.cases}
    pairs = {(c.params["a"], c.params["b"]) for c in rep.cases
             if c.params["relation"] == "bubble_commutator"}
    full = {(a, s - a) for s in range(5) for a in range(s + 1)}
    record(4, rep.passed and needed <= seen and pairs == full, _describe(rep))


def test_criterion_05_pq():
    rep = suite_pq(RunConfig(max_degree=D, mn_max=4))
    scalar = [c for c in rep.cases if c.params["relation"] == "q1p1_scalar"]
    record(5, rep.passed and len(scalar) == 1, _describe(rep))


def test_criterion_06_psi():
    sols = [traceh.psi_leading_term(l, D) for l in range(5)]
    ok = all(s is not None and s[-1] == (-1) ** l for l, s in enumerate(sols))
    record(6, ok and suite_psi(RunConfig(max_degree=D)).passed,
           "leading " + ", ".join(str(s[-1]) if s else "none" for s in sols))


def test_criterion_07_daha():
    start = time.perf_counter()
    rel = daha.check_defining_relations(2, 4) and daha.check_defining_relations(3, 4)
    r2, r3 = daha.cocenter_dims(2, 4, 2), daha.cocenter_dims(3, 2, 2)
    ok = (rel and list(r2.dims) == [2, 2, 3, 3, 4] == daha.hhsd_dims(2, 4) and r2.stabilized
          and list(r3.dims) == [3, 4, 6] == daha.hhsd_dims(3, 2) and r3.stabilized)
    elapsed = time.perf_counter() - start
    record(7, ok and elapsed < 300, f"dims {list(r2.dims)} and {list(r3.dims)}, {elapsed:.1f}s")


def test_criterion_08_series():
    prod = series.product_formula(">", 5, 3)
    ok = prod == series.trace_count(5, 3) and series.hypergeometric_check(4, 8) \
        and prod[(1, 0)] == 1 and prod[(2, 1)] == 2
    record(8, ok and suite_series(RunConfig()).passed)


def test_criterion_09_remark():
    rep = traceh.lemma_suite("remark", [(1, 2), (2, 2), (2, 3)], D)
    record(9, rep.passed and len(rep.cases) == 3, _describe(rep))


def test_criterion_10_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = (main(["verify", "all", "-q", "--out", str(a)]),
             main(["verify", "all", "-q", "--jobs", "4", "--out", str(b)]))
    same = a.read_bytes() == b.read_bytes()
    record(10, codes == (0, 0) and same, f"exit codes {codes}, {a.stat().st_size} bytes")
