"""Runs every acceptance criterion and prints its PASS/FAIL line."""

import pytest

from localfactors.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number,name", [(n, name) for n, name, _f in CRITERIA])
def test_criterion(number, name):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line()
