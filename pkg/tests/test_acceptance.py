"""One test per numbered acceptance criterion; a PASS/FAIL line is printed for each.

Run directly (python tests/test_acceptance.py) for the lines alone.
"""

import functools

import pytest

from laurel.reproduce import CRITERIA
from conftest import ACCEPTANCE_LINES

# The degree-(p+1) relation as usually printed has constant term
# -f_{p-2}(X^2-3) + X f_{p-1}; the closed-form word satisfies the version with
# 3 X f_{p-1} instead.  Criterion 5 is stated for the former, so it fails.
KNOWN_FAILURES = {5: "printed relation is not satisfied by the closed-form word (residual -p)"}


@functools.lru_cache(maxsize=None)
def _run(k):
    r = CRITERIA[k]()
    ACCEPTANCE_LINES[k] = r.line()
    print(r.line())
    return r


@pytest.mark.parametrize("k", [k for k in sorted(CRITERIA) if k not in KNOWN_FAILURES])
def test_criterion(k):
    r = _run(k)
    assert r.passed, r.measured


@pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[5])
def test_criterion_5_as_stated():
    r = _run(5)
    assert r.passed, r.measured


def test_criterion_5_corrected_relation():
    r = _run(5)
    for p in (5, 7):
        row = r.measured[p]
        assert row["corrected"]["residual_valuation"] >= 150
        assert row["corrected"]["root_reproduces_100_letters"]
        assert row["corrected"]["roots"] == 1
        assert row["printed"]["residual_valuation"] == -p


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        print(CRITERIA[k]().line())
