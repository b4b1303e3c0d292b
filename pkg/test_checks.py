#!/usr/bin/env python3

import sys
import os
sys.path.insert(0, os.path.dirname(__file__))

import pytest

import checks
from checks import CHECKS, CheckFailed
from checks.common import expect
from cli import EXIT_OK, ScanConfig, main


def test_checks_are_ordered():
    names = [c.__module__.rsplit(".", 1)[-1] for c in CHECKS]
    assert names[:2] == ["group_dictionary", "sym3_image"]
    assert names[-1] == "class_dictionary"
    assert len(set(names)) == 8


def test_expect_carries_witness():
    with pytest.raises(CheckFailed) as e:
        expect(1 == 2, "numbers differ", left=1, right=2)
    assert e.value.witness == {"left": 1, "right": 2}
    expect(True, "never raised")


@pytest.mark.parametrize("check", [
    checks.group_dictionary, checks.sym3_image, checks.galois_classification,
    checks.parity_chain, checks.weil_bounds,
])
def test_quick_checks_pass(check):
    assert check(ScanConfig()) is not None


def test_diophantine_check():
    result = checks.diophantine(ScanConfig(trials=10))
    assert result["orientation"]["WEBER_D10"] == "swapped"


@pytest.mark.slow
def test_selftest_command():
    assert main(["selftest"]) == EXIT_OK


@pytest.mark.slow
def test_full_selftest_command():
    assert main(["selftest", "--full", "--curve-diagnostics"]) == EXIT_OK
