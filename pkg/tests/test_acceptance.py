"""Acceptance gate: every criterion runs at its stated tolerance.

One pass/fail line per criterion is printed (visible with ``pytest -s`` or
via ``zsegz selftest``).  Criterion 6 is a known honest failure: the exact
modified constant for the rank-2 group [2,4] at L={4} is 9, refuting the
stated sandwich upper bound 8 with an explicit certificate.  See
``zsegz construct``/``zsegz constant`` output and the test detail message.
"""

import pytest

from zsegz import acceptance

_NUMBERS = list(range(1, 11))


@pytest.fixture(scope="module")
def results():
    out = {}
    for r in acceptance.run_all():
        out[r.number] = r
        line = f"{'PASS' if r.passed else 'FAIL'} criterion {r.number}: {r.name} ({r.seconds:.1f}s)"
        print(line)
        if not r.passed:
            print(f"     {r.detail}")
    return out


@pytest.mark.parametrize("number", _NUMBERS)
def test_criterion(results, number):
    r = results[number]
    assert r.passed, f"criterion {number} ({r.name}): {r.detail}"
