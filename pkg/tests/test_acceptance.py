"""Acceptance criteria 1-12, one PASS/FAIL line each."""

from __future__ import annotations

import time

import pytest

from supercohom.verify import CHECKS

CRITERIA = {
    1: "consistency suite",
    2: "brute vs invariant cohomology on sl(2|1)",
    3: "H2(sl(m|1), K) = 0, m = 2,3,4",
    4: "gl(m|1) invariant 2-cochains and a + b = 0",
    5: "realization H2 on gl(m|1) and sl(m|1)",
    6: "D-eigenvalue laws and ranges",
    7: "realization vs simple module",
    8: "sl(3|2) structural counts",
    9: "sl(3|2) screening and dual table",
    10: "H2 of sl(3|2) with vector, covector, trivial, adjoint coefficients",
    11: "S2(sl(3|2)) structure and cohomology",
    12: "negative control outside the families",
}


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(criterion, capsys):
    checks = [c for c in CHECKS if c.criterion == criterion]
    assert checks, f"no check registered for criterion {criterion}"
    t0 = time.perf_counter()
    failed = []
    for c in checks:
        ok, detail = c.fn()
        if not ok:
            failed.append((c.name, detail))
    status = "PASS" if not failed else "FAIL"
    with capsys.disabled():
        print(f"\ncriterion {criterion:2d} {status}  {CRITERIA[criterion]}  ({time.perf_counter() - t0:.1f}s)")
    assert not failed, failed
