"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest; the
pytest run repeats the lines in the terminal summary.
"""

import sys
import time

import pytest

from shilov import selftest

SEED = 20240601
RESULTS = {}
TIME_LIMITS = {1: 1.0, 3: 10.0}


def _run(suite):
    start = time.perf_counter()
    result = suite(SEED)
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(result.number)
    passed = result.passed and (limit is None or elapsed < limit)
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:.0f}s)" if limit else "")
    line = f"criterion {result.number}: {'PASS' if passed else 'FAIL'} - {result.name}: {result.detail}; {timing}"
    RESULTS[result.number] = line
    print(line)
    return passed, line


@pytest.mark.parametrize("suite", selftest.SUITES, ids=lambda s: s.__name__)
def test_criterion(suite):
    passed, line = _run(suite)
    assert passed, line


if __name__ == "__main__":
    outcomes = [_run(suite)[0] for suite in selftest.SUITES]
    sys.exit(0 if all(outcomes) else 1)
