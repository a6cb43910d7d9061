from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rendezvous.errors import PlanError, StallError
from rendezvous.exactnum import Scalar
from rendezvous.line_model import (
    Configuration,
    MeetEvent,
    PhaseController,
    Plan,
    Trajectory,
    diameter,
    first_meet_time,
    gather_time,
    merge_colocated,
    position_at,
    simulate,
    trajectories_csv,
    validate_plan,
)
from rendezvous.strategies import make_plan, mtc_plan, ssi_plan


def traj(*pts):
    return Trajectory(tuple((Scalar(Fraction(t)), Scalar(Fraction(x))) for t, x in pts))


def test_position_interpolates_and_holds():
    tr = traj((0, 0), (2, 2), (3, 1))
    assert position_at(tr, Fraction(5, 2)) == Fraction(3, 2)
    assert position_at(tr, 10) == 1
    assert position_at(tr, 0) == 0
    with pytest.raises(ValueError):
        position_at(tr, -1)


def test_trajectory_rejects_bad_breakpoints():
    with pytest.raises(ValueError):
        traj((1, 0), (2, 1))
    with pytest.raises(ValueError):
        traj((0, 0), (1, 1), (1, 2))


def test_first_meet_examples():
    a = traj((0, 0), (10, 10))
    b = traj((0, 4), (10, -6))
    assert first_meet_time(a, b) == 2
    c = traj((0, 1), (10, 11))
    assert first_meet_time(a, c) is None
    assert first_meet_time(a, traj((0, 0), (1, 1))) == 0


def test_gather_time_on_three_robot_plan():
    plan = mtc_plan(Configuration.from_positions([0, 1, 2]), 1)
    assert gather_time(plan, [0, 1]) == Fraction(1, 2)
    assert gather_time(plan, [1, 2]) == 1
    assert gather_time(plan, [2]) == 0
    assert gather_time(plan, range(3)) == plan.all_gather_time


def test_gather_time_raises_when_never_met():
    config = Configuration.from_positions([0, 1])
    plan = Plan(config, (traj((0, 0), (1, 0)), traj((0, 1), (1, 1))), (), Scalar(1))
    with pytest.raises(PlanError):
        gather_time(plan, [0, 1])


def test_diameter_examples():
    c = Configuration.from_positions([-1, 0, 1])
    assert diameter(c, range(3)) == 2
    assert diameter(c, [1]) == 0
    assert diameter(Configuration.from_positions([0, Fraction(41, 10)]), [0, 1]) == Fraction(41, 10)


def test_merge_colocated_groups():
    _, groups = merge_colocated(Configuration.from_positions([0, 0, 1]))
    assert groups == [frozenset({0, 1}), frozenset({2})]
    _, groups = merge_colocated(Configuration.from_positions([3, 1, 2]))
    assert groups == [frozenset({1}), frozenset({2}), frozenset({0})]
    c = Configuration.from_positions([5, 5, 5])
    _, groups = merge_colocated(c)
    assert groups == [frozenset({0, 1, 2})] and diameter(c, range(3)) == 0


def _plan(trajs, events, G):
    config = Configuration.from_positions([t.breakpoints[0][1] for t in trajs])
    return Plan(config, tuple(trajs), tuple(events), Scalar(G))


def test_validator_flags_slow_segment():
    p = _plan([traj((0, 0), (2, 1)), traj((0, 2), (1, 1), (2, 1))], [MeetEvent(Scalar(2), Scalar(1), frozenset({0, 1}))], 2)
    rules = {(v.robot, v.rule) for v in validate_plan(p)}
    assert (0, 2) in rules


def test_validator_flags_turn_without_meeting():
    a = traj((0, 0), (1, 1), (3, -1))
    b = traj((0, -3), (2, -1))
    p = _plan([a, b], [MeetEvent(Scalar(2), Scalar(-1), frozenset({0, 1}))], 2)
    out = validate_plan(p)
    assert [(v.robot, v.time, v.rule) for v in out] == [(0, 1, 1)]


def test_validator_accepts_turn_at_meeting():
    a = traj((0, 0), (1, 1), (2, 0))
    b = traj((0, 2), (1, 1), (2, 0))
    c = traj((0, -2), (2, 0))
    events = [MeetEvent(Scalar(1), Scalar(1), frozenset({0, 1})), MeetEvent(Scalar(2), Scalar(0), frozenset({0, 1, 2}))]
    assert validate_plan(_plan([a, b, c], events, 2)) == []


def test_trajectory_csv_format():
    plan = ssi_plan(Configuration.from_positions([0, 1, 3, 7]))
    lines = trajectories_csv(plan).splitlines()
    assert lines[0] == "robot,t,x"
    finals = {}
    for line in lines[1:]:
        r, t, x = line.split(",")
        finals[r] = (t, x)
    assert set(finals.values()) == {("7/2", "7/2")}


class _Frozen:
    def step(self, t, positions):
        return [0] * len(positions), None


def test_simulate_detects_stall():
    with pytest.raises(StallError):
        simulate(Configuration.from_positions([0, 1]), _Frozen())


def test_phase_controller_runs_out():
    ctrl = PhaseController([(Scalar(Fraction(1, 4)), (1, -1))])
    with pytest.raises(StallError):
        simulate(Configuration.from_positions([0, 1]), ctrl)


def test_simulate_logs_initial_colocation():
    ctrl = PhaseController([(Scalar(1), (1, 1, -1))])
    plan = simulate(Configuration.from_positions([0, 0, 2]), ctrl)
    assert plan.events[0] == MeetEvent(Scalar(0), Scalar(0), frozenset({0, 1}))
    assert plan.all_gather_time == 1


# random piecewise-linear unit-speed trajectories
@st.composite
def walks(draw):
    x = Fraction(draw(st.integers(-10, 10)), draw(st.integers(1, 4)))
    t = Fraction(0)
    pts = [(t, x)]
    for _ in range(draw(st.integers(0, 5))):
        dt = Fraction(draw(st.integers(1, 8)), draw(st.integers(1, 4)))
        v = draw(st.sampled_from([-1, 0, 1]))
        t, x = t + dt, x + v * dt
        pts.append((t, x))
    return traj(*pts)


@settings(max_examples=200)
@given(walks(), walks())
def test_first_meet_is_symmetric(a, b):
    assert first_meet_time(a, b) == first_meet_time(b, a)


@settings(max_examples=200)
@given(walks(), walks())
def test_first_meet_is_a_real_meeting(a, b):
    t = first_meet_time(a, b)
    if t is not None:
        assert position_at(a, t) == position_at(b, t)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.fractions(min_value=0, max_value=10, max_denominator=4), min_size=3, max_size=6),
    st.sampled_from(["ssi", "mtc"]),
    st.data(),
)
def test_gather_time_is_monotone_in_the_subset(pos, name, data):
    config = Configuration.from_positions(pos)
    plan = make_plan(name, config, 1)
    ids = list(range(config.n))
    sub = data.draw(st.lists(st.sampled_from(ids), min_size=1, unique=True))
    extra = data.draw(st.sampled_from(ids))
    assert gather_time(plan, sub) <= gather_time(plan, sub + [extra])
    assert gather_time(plan, ids) == plan.all_gather_time
