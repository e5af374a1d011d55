"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Each test prints a PASS/FAIL line (visible with ``pytest -s`` or on failure)
so the suite doubles as a human-readable report; ``eqmap verify`` runs the
same criteria from the command line.
"""

import pytest

from eqmap.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number,title", [(n, t) for n, t, _ in CRITERIA],
                         ids=["c%02d" % n for n, _, _ in CRITERIA])
def test_criterion(number, title):
    result = run_criterion(number)
    print("%s  %2d. %s: %s  (%.2fs)" % (
        "PASS" if result.passed else "FAIL",
        result.number, result.title, result.detail, result.seconds))
    assert result.passed, "%s: %s" % (result.title, result.detail)


def test_every_criterion_is_covered():
    assert [n for n, _, _ in CRITERIA] == list(range(1, 14))
