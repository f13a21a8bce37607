"""Full-scale acceptance criteria, one PASS/FAIL line each.

Tolerances are exact (zero mismatches, zero violations); each criterion also
carries its wall-clock budget, enforced inside ``gf2lab.acceptance``.
"""

import pytest

from gf2lab.acceptance import FULL, _timed


@pytest.mark.slow
@pytest.mark.parametrize("name,fn,kw,limit", FULL, ids=[c[0].split()[0] for c in FULL])
def test_criterion(name, fn, kw, limit, capsys):
    outcome = _timed(name, fn, limit, **kw)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.line()
