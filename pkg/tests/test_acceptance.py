"""The ten acceptance criteria, one test each.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either
way one PASS/FAIL line per criterion is printed.
"""

import sys

import pytest

from gentle.acceptance import CRITERIA

RESULTS = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k + 1}" for k in range(len(CRITERIA))])
def test_criterion(criterion):
    r = criterion()
    RESULTS.append(r)
    print(r.line, file=sys.__stdout__, flush=True)
    assert r.ok, r.line


if __name__ == "__main__":
    bad = 0
    for c in CRITERIA:
        r = c()
        print(r.line)
        bad += not r.ok
    sys.exit(1 if bad else 0)
