"""Release gate: the nine acceptance criteria.

The whole battery runs once per session (module-scoped fixture); each test
prints its criterion's PASS/FAIL line and fails with the detail string, so
`pytest tests/test_acceptance.py -s` shows the same report as `cjl selftest`.
"""

import pytest

from cjl.acceptance import run_all

NAMES = [
    "resolution-independence",
    "fiber-criterion",
    "base-change",
    "gauge-calculus",
    "acyclic-stability",
    "torus-oracle",
    "rank-identities",
    "two-path-agreement",
    "kernel-soundness",
]


@pytest.fixture(scope="module")
def battery():
    results = run_all(seed=0)
    assert [name for name, _, _ in results] == NAMES
    return {name: (ok, detail) for name, ok, detail in results}


def _report(battery, name):
    ok, detail = battery[name]
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_1_resolution_independence(battery):
    _report(battery, "resolution-independence")


def test_2_fiber_criterion(battery):
    _report(battery, "fiber-criterion")


def test_3_base_change(battery):
    _report(battery, "base-change")


def test_4_gauge_calculus(battery):
    _report(battery, "gauge-calculus")


def test_5_acyclic_stability(battery):
    _report(battery, "acyclic-stability")


def test_6_torus_oracle(battery):
    _report(battery, "torus-oracle")


def test_7_rank_identities(battery):
    _report(battery, "rank-identities")


def test_8_two_path_agreement(battery):
    _report(battery, "two-path-agreement")


def test_9_kernel_soundness(battery):
    _report(battery, "kernel-soundness")
