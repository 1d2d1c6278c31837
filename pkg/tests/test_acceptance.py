"""The acceptance suite, one test per criterion.

Each test prints a single ``item: PASS|FAIL (seconds)`` line straight to the
terminal, then asserts the item passed within its time budget. Run directly
with ``python tests/test_acceptance.py`` for the same lines without pytest.
"""

import sys
import time

import pytest

from ediv.acceptance import ITEMS, run_item

BUDGET_SECONDS = 60.0


def timed(name):
    t0 = time.perf_counter()
    rep = run_item(name, seed=0)
    return rep, time.perf_counter() - t0


@pytest.mark.parametrize("name", sorted(ITEMS))
def test_acceptance_item(name, capsys):
    rep, elapsed = timed(name)
    with capsys.disabled():
        print(f"\n{name}: {rep['status'].upper()} ({elapsed:.1f}s)")
    assert rep["status"] == "pass", rep
    assert elapsed < BUDGET_SECONDS


def test_reports_are_deterministic():
    a, _ = timed("01-operad-axioms")
    b, _ = timed("01-operad-axioms")
    assert a == b


if __name__ == "__main__":
    failed = 0
    for name in sorted(ITEMS):
        rep, elapsed = timed(name)
        ok = rep["status"] == "pass" and elapsed < BUDGET_SECONDS
        failed += not ok
        print(f"{name}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s)")
    sys.exit(1 if failed else 0)
