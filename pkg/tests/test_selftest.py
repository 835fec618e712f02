"""
The bundled invariant suites
"""

import pytest

from holonomy2.config import DEFAULT_SETTINGS
from holonomy2.selftest import SUITES, check, run_selftest


def test_every_suite_passes():
    checks = run_selftest(DEFAULT_SETTINGS)
    failed = [c["name"] for c in checks if not c["passed"]]
    assert failed == []
    assert {c["name"].split("/")[0] for c in checks} >= set(SUITES) - {"simplicial"}


def test_checks_are_sorted_and_parallel_safe():
    names = ["crossed", "forms", "lie"]
    serial = run_selftest(DEFAULT_SETTINGS, names)
    pooled = run_selftest(DEFAULT_SETTINGS.replace(workers=3), names)
    assert serial == pooled
    assert [c["name"] for c in serial] == sorted(c["name"] for c in serial)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_selftest(DEFAULT_SETTINGS, ["nonexistent"])


def test_check_record():
    assert check("x", 1, 2) == {"name": "x", "passed": True, "residual": 2.0}
    assert check("y", False)["residual"] is None


@pytest.mark.parametrize("name", ["holonomy", "hochschild"])
def test_numeric_and_chain_suites_pass_alone(name):
    checks = run_selftest(DEFAULT_SETTINGS, [name])
    assert checks
    assert [c["name"] for c in checks if not c["passed"]] == []


def test_structural_checks_are_present():
    names = {c["name"] for c in run_selftest(DEFAULT_SETTINGS, ["crossed", "lie", "simplicial"])}
    assert {
        "lie/betti/sl2",
        "lie/betti/heisenberg",
        "crossed/outer-action-sl2-standard",
        "crossed/kernel-collapse-detected",
        "hh/induced-map-functorial",
    } <= names
