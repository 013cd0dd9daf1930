"""Acceptance suite: every criterion at its stated tolerance, one line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the pass/fail ledger;
``qig verify-all`` prints the same checks from the command line.
"""

import pytest

from qig import acceptance


@pytest.mark.parametrize("check_id,title,fn", acceptance.CHECKS,
                         ids=[f"{c[0]}_{c[2].__name__}" for c in acceptance.CHECKS])
def test_acceptance_criterion(check_id, title, fn):
    passed, detail = fn()
    status = "PASS" if passed else "FAIL"
    print(f"{status} [{check_id:>2}] {title}: {detail}")
    assert passed, f"[{check_id}] {title}: {detail}"
