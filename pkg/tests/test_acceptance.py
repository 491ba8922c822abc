"""Acceptance criteria 1-10, each with its time limit.

Runs under pytest (one PASS/FAIL line per criterion is printed to the
terminal) or directly: ``python3 tests/test_acceptance.py``.
"""

import sys
import time

import pytest

from ncdeform.checks import run_suite
from ncdeform.cli import dumps

SEED = 0

# criterion -> (suite, seconds)
CRITERIA = {
    1: ("counts", 60),
    2: ("splittings", 60),
    3: ("cor2", 120),
    4: ("derivatives", 30),
    5: ("formality", 60),
    6: ("pi-unit", 30),
    7: ("bracket-axioms", 60),
    8: ("star", 60),
    9: ("perm", 10),
}

_first_runs: dict = {}


def _line(n: int, ok: bool, seconds: float, note: str = "") -> str:
    tail = f" {note}" if note else ""
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s){tail}"


def evaluate(n: int) -> tuple[bool, float, str]:
    if n == 10:
        start = time.perf_counter()
        differing = []
        for m, (suite, _) in CRITERIA.items():
            if m not in _first_runs:
                evaluate(m)
            if dumps(run_suite(suite, seed=SEED)) != _first_runs[m]:
                differing.append(suite)
        elapsed = time.perf_counter() - start
        return not differing, elapsed, ("differs: " + ", ".join(differing)) if differing else ""
    suite, limit = CRITERIA[n]
    start = time.perf_counter()
    report = run_suite(suite, seed=SEED)
    elapsed = time.perf_counter() - start
    _first_runs[n] = dumps(report)
    failed = [p["name"] for p in report["properties"] if p["failed"]]
    notes = []
    if failed:
        notes.append("failed: " + ", ".join(failed))
    if elapsed >= limit:
        notes.append(f"over the {limit}s limit")
    return report["passed"] and elapsed < limit, elapsed, "; ".join(notes)


@pytest.mark.parametrize("n", list(range(1, 11)))
def test_criterion(n, capsys):
    ok, elapsed, note = evaluate(n)
    with capsys.disabled():
        print("\n" + _line(n, ok, elapsed, note))
    assert ok, note


if __name__ == "__main__":
    results = [evaluate(n) for n in range(1, 11)]
    for n, (ok, elapsed, note) in enumerate(results, start=1):
        print(_line(n, ok, elapsed, note))
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
