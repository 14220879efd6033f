"""Acceptance criteria 1-12, one test each.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or in
the captured output of a failure) and asserts every named check, including
the wall-clock bound where the criterion has one.
"""

import pytest

from buildgeom.acceptance import CRITERIA, run_criterion

SEED = 42


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    title, bound, _ = CRITERIA[number]
    checks, elapsed = run_criterion(number, SEED)
    failed = [c.name for c in checks if not c.passed]
    status = "PASS" if not failed else "FAIL"
    limit = f" (bound {bound}s)" if bound is not None else ""
    with capsys.disabled():
        print(f"\n[criterion {number:2d}] {status} {title}: {elapsed:.2f}s{limit}"
              + (f" failed={failed}" if failed else ""))
    assert checks
    assert not failed, {c.name: c.detail for c in checks if not c.passed}
