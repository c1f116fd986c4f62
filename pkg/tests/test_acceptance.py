"""One test per acceptance criterion; each prints a PASS/FAIL line."""
from __future__ import annotations

import pytest

from heightlab.acceptance import CRITERIA, run_criterion

RESULTS: dict[int, str] = {}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    res = run_criterion(n, seed=0)
    line = res.line()
    RESULTS[n] = line
    print(line)
    assert res.passed, res.detail


def test_all_criteria_present():
    assert sorted(CRITERIA) == list(range(1, 13))
