from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rendezvous.errors import PreconditionError
from rendezvous.evaluation import (
    EvalRequest,
    FaultSet,
    GatherIndex,
    bound_check,
    competitive_ratio,
    domain_grid,
    frr_sweep,
    lower_bound_witness,
    offline_time,
    random_config,
    ssi_tightness_config,
    theorem_bound,
    verify_lemmas,
    worst_case_cr,
)
from rendezvous.exactnum import Scalar, phi
from rendezvous.frr import case_cr, golden_config
from rendezvous.line_model import Configuration, gather_time
from rendezvous.strategies import make_plan, mtc_plan, ssi_plan

F = Fraction
cfg = Configuration.from_positions


def test_offline_time():
    c = cfg([0, 3, -1, 1])
    assert offline_time(c, [0, 1]) == F(3, 2)
    assert offline_time(c, [2]) == 0
    assert offline_time(c, [2, 3]) == 1


def test_competitive_ratio_examples():
    plan = mtc_plan(cfg([0, 1, 2]), 1)
    assert competitive_ratio(plan, {0}) == 2
    assert competitive_ratio(ssi_plan(cfg([0, 5])), set()) == 1
    co = ssi_plan(cfg([0, 0, 4]))
    assert competitive_ratio(co, {2}) == 1


def test_request_validation():
    c = cfg([0, 1, 2])
    with pytest.raises(PreconditionError):
        EvalRequest(c, 2)
    with pytest.raises(ValueError):
        EvalRequest(c, 1, "sometimes")


def test_fault_set_enumeration_counts():
    c = cfg(range(5))
    assert len(list(EvalRequest(c, 2, "exactly").fault_sets())) == 10
    assert len(list(EvalRequest(c, 2, "at_most").fault_sets())) == 1 + 5 + 10
    assert list(EvalRequest(c, 0).fault_sets()) == [FaultSet(frozenset())]


def test_worst_case_examples():
    c = cfg([0, 1, 2, 4])
    rep = worst_case_cr(mtc_plan(c, 1), EvalRequest(c, 1))
    assert rep.worst == F(4, 3) and rep.argmax.ids == {0}
    assert len(rep.entries) == 5

    g = golden_config()
    assert worst_case_cr(make_plan("frr", g), EvalRequest(g, 2, "exactly")).worst == 1 + phi()

    t = ssi_tightness_config(4, 2, F(1, 10))
    assert worst_case_cr(ssi_plan(t), EvalRequest(t, 2, "exactly")).worst == F(31, 11)


def test_zero_diameter_sets_are_skipped():
    c = cfg([0, 0, 0, 3])
    rep = worst_case_cr(ssi_plan(c), EvalRequest(c, 2, "exactly"))
    skipped = {e.faults.ids for e in rep.skipped}
    assert frozenset({3, 0}) in skipped
    assert all(e.diameter == 0 and e.ratio == 1 for e in rep.skipped)
    assert rep.worst == max(e.ratio for e in rep.entries if e.diameter != 0)


def test_zero_fault_budget_is_single_row():
    c = cfg([0, 1, 3, 7])
    rep = worst_case_cr(ssi_plan(c), EvalRequest(c, 0))
    assert len(rep.entries) == 1 and rep.worst == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 7), st.sampled_from(["ssi", "mtc"]))
def test_index_agrees_with_trajectory_scan(seed, n, name):
    # two independent routes to gather times: meeting log vs trajectory scan
    c = random_config(seed, n, max_denominator=5, span=12, duplicates=True)
    plan = make_plan(name, c, (n - 1) // 2)
    index = GatherIndex(plan)
    for fs in EvalRequest(c, n - 2).fault_sets():
        keep = [i for i in range(n) if i not in fs.ids]
        assert index.gather(keep) == gather_time(plan, keep)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 7))
def test_ratios_at_least_one_and_modes_nest(seed, n):
    c = random_config(seed, n, max_denominator=4, span=10)
    plan = ssi_plan(c)
    f = n - 2
    at_most = worst_case_cr(plan, EvalRequest(c, f, "at_most"))
    exactly = worst_case_cr(plan, EvalRequest(c, f, "exactly"))
    assert all(e.ratio >= 1 for e in at_most.entries if e.ratio is not None)
    assert at_most.worst >= exactly.worst


def test_theorem_bounds_and_hypotheses():
    assert theorem_bound("ssi", 5, 3) == 4
    assert theorem_bound("doubling", 5, 3) == 12
    assert theorem_bound("mtc", 5, 2) == 2
    assert theorem_bound("three_group", 10, 5) == 5
    assert theorem_bound("frr", 4, 2, "exactly") == 1 + phi()
    with pytest.raises(PreconditionError, match="f <= \\(n-1\\)/2"):
        theorem_bound("mtc", 5, 3)
    with pytest.raises(PreconditionError, match="boundary"):
        theorem_bound("three_group", 10, 6)
    with pytest.raises(PreconditionError, match="exactly"):
        theorem_bound("frr", 4, 2, "at_most")


def test_bound_check_examples():
    small = cfg([0, 1, 2])
    bc = bound_check("mtc", EvalRequest(small, 1))
    assert bc.passed and bc.margin == 0
    g = golden_config()
    bc = bound_check("frr", EvalRequest(g, 2, "exactly"))
    assert bc.passed and bc.margin == 0
    bc = bound_check("ssi", EvalRequest(cfg([0, 1, 3, 7]), 2))
    assert bc.passed and bc.bound == 3


@pytest.mark.parametrize(
    "n,f,expected",
    [(4, 2, [-1, -1, 0, 1]), (3, 1, [-1, 0, 1]), (5, 2, [-1, -1, 0, 0, 1]), (6, 1, [-1, 0, 0, 0, 0, 1])],
)
def test_lower_bound_witness(n, f, expected):
    assert sorted(lower_bound_witness(n, f).positions) == expected


def test_lower_bound_witness_range():
    with pytest.raises(PreconditionError):
        lower_bound_witness(2, 1)
    with pytest.raises(PreconditionError):
        lower_bound_witness(4, 3)


@pytest.mark.parametrize(
    "n,f,eps,expected",
    [(4, 2, F(1, 10), [1, 2, 3, F(41, 10)]), (3, 1, 1, [1, 2, 4]), (5, 3, F(1, 10), [1, 2, 3, 4, F(51, 10)])],
)
def test_tightness_configs(n, f, eps, expected):
    assert list(ssi_tightness_config(n, f, eps).positions) == expected


@pytest.mark.parametrize("n,f,eps", [(3, 1, 1), (4, 2, F(1, 10)), (5, 3, F(1, 10)), (6, 2, F(1, 3)), (6, 4, F(2, 7))])
def test_tightness_ratio(n, f, eps):
    c = ssi_tightness_config(n, f, eps)
    worst = worst_case_cr(ssi_plan(c), EvalRequest(c, f)).worst
    assert worst == 1 + Scalar(f) / (1 + Scalar(F(eps)))


def test_tightness_needs_positive_eps():
    with pytest.raises(PreconditionError):
        ssi_tightness_config(4, 2, 0)


def test_random_config_contract():
    a = random_config(11, 7, max_denominator=5, span=9)
    b = random_config(11, 7, max_denominator=5, span=9)
    assert a == b
    pos = list(a.positions)
    assert pos == sorted(pos)
    assert len(set(pos)) == 7
    assert all(0 <= p <= 9 and p.as_fraction().denominator <= 5 for p in pos)
    shifted = random_config(11, 7, max_denominator=5, span=9, low=-4)
    assert [p - 4 for p in pos] == list(shifted.positions)
    with pytest.raises(ValueError):
        random_config(0, 5, max_denominator=1, span=2)


def test_domain_grid_counts():
    pts = list(domain_grid(4))
    assert len(pts) == 9
    assert all(0 <= y <= x and x + y <= 1 for x, y in pts)


def test_lemma_examples_at_half_quarter():
    x, y = F(1, 2), F(1, 4)
    assert case_cr(4, x, y) == 2 <= case_cr(2, x, y) == 4
    assert case_cr(6, x, y) == 2 <= case_cr(1, x, y) == 4


def test_verify_lemmas_small_grid():
    rep = verify_lemmas(20)
    assert rep.ok and rep.points == len(list(domain_grid(20)))
    assert rep.soundness_skipped == 1


def test_frr_sweep_rows():
    rows = frr_sweep(8)
    assert len(rows) == len(list(domain_grid(8)))
    assert all(r.worst <= 1 + phi() for r in rows)
    assert {r.case for r in rows} <= {3, 4, 5, 6}
