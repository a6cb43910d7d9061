"""Acceptance gate: one test per criterion, exact comparisons throughout."""

import time

from rendezvous import verify


def timed(item):
    start = time.perf_counter()
    result = item()
    return result, time.perf_counter() - start


def test_criterion_01_ssi_bound(criterion):
    r, secs = timed(verify.ssi_bound)
    ok = r.passed and secs < 30
    criterion(1, ok, f"{r.detail} ({secs:.1f}s, limit 30s)")
    assert r.passed, r.detail
    assert secs < 30


def test_criterion_02_ssi_tightness(criterion):
    r = verify.ssi_tightness()
    criterion(2, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_03_doubling_pair_bound(criterion):
    r, secs = timed(verify.doubling_pair_bound)
    criterion(3, r.passed and secs < 30, f"{r.detail} ({secs:.1f}s, limit 30s)")
    assert r.passed, r.detail
    assert secs < 30


def test_criterion_04_scaled_doubling_bound(criterion):
    r = verify.scaled_doubling_bound()
    criterion(4, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_05_mtc_bound(criterion):
    r = verify.mtc_bound()
    criterion(5, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_06_three_group_bound_and_partition(criterion):
    r, secs = timed(verify.three_group_bound)
    criterion(6, r.passed and secs < 300, f"{r.detail} ({secs:.1f}s, limit 300s)")
    assert secs < 300
    assert r.passed, r.detail


def test_criterion_07_frr_optimality(criterion):
    grid = verify.frr_grid()
    golden = verify.frr_golden_point()
    criterion(7, grid.passed and golden.passed, f"{grid.detail}; golden point {golden.detail}")
    assert grid.passed, grid.detail
    assert golden.passed, golden.detail


def test_criterion_08_pair_term_agreement(criterion):
    r = verify.pair_term_agreement()
    criterion(8, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_09_lemma_sweeps(criterion):
    r, secs = timed(verify.lemma_sweeps)
    criterion(9, r.passed and secs < 60, f"{r.detail} ({secs:.1f}s, limit 60s)")
    assert r.passed, r.detail
    assert secs < 60


def test_criterion_10_lower_bound_witness(criterion):
    r = verify.lower_bound_witness_check()
    criterion(10, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_11_plan_validation(criterion):
    r = verify.plan_validation()
    criterion(11, r.passed, r.detail)
    assert r.passed, r.detail
