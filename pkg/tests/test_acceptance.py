"""Acceptance suite: every exit criterion at its stated tolerance, one
pass/fail line per criterion (run with `pytest -s` to see them inline).

Grid definitions live in spanlab.bench so `spanlab bench` runs the exact
same checks from the command line.
"""

from __future__ import annotations

import pytest

from spanlab import bench


def _report(outcome):
    status = "PASS" if outcome.passed else "FAIL"
    print(f"criterion {outcome.number} ({outcome.name}): {status} -- {outcome.detail}")
    for w in outcome.warnings:
        print(f"  warning: {w}")
    assert outcome.passed, f"criterion {outcome.number}: {outcome.detail}"


@pytest.fixture(scope="module")
def hybrid_results():
    return bench.run_hybrid_grid()


@pytest.fixture(scope="module")
def swmult_results():
    return bench.run_swmult_grid()


@pytest.fixture(scope="module")
def swadd_results():
    return bench.run_swadd_grid()


def test_criterion_1_hybrid_stretch(hybrid_results):
    rows, stretch_ok, _ = hybrid_results
    _report(bench.criterion_hybrid(rows, stretch_ok))


def test_criterion_2_hybrid_center_pairs(hybrid_results):
    rows, _, centers_ok = hybrid_results
    _report(bench.criterion_hybrid_centers(rows, centers_ok))


def test_criterion_3_sourcewise_multiplicative(swmult_results):
    rows, ok, centers_ok = swmult_results
    _report(bench.criterion_swmult(rows, ok, centers_ok))


def test_criterion_4_additive_sourcewise(swadd_results):
    rows, ok = swadd_results
    _report(bench.criterion_swadd(rows, ok))


def test_criterion_5_emulator_sandwich():
    rows, ok = bench.run_emulator_grid()
    _report(bench.criterion_emulator(rows, ok))


def test_criterion_6_plus4_sourcewise():
    rows, ok = bench.run_sw4_grid()
    _report(bench.criterion_sw4(rows, ok))


def test_criterion_7_lowerbound_family():
    rows, ok = bench.run_lowerbound_grid()
    _report(bench.criterion_lowerbound(rows, ok))


def test_criterion_8_size_ratio_caps(hybrid_results, swmult_results, swadd_results):
    _report(
        bench.criterion_ratios(hybrid_results[0], swmult_results[0], swadd_results[0])
    )


def test_criterion_9_oracle_self_consistency():
    rows, ok = bench.run_oracle_check()
    _report(bench.criterion_oracle(rows, ok))
