"""Robots on the line: configurations, trajectories, plans and the event kernel.

A plan is produced by :func:`simulate`, which advances all robots exactly
from one event to the next.  Between events every robot moves with velocity
-1, 0 or +1; an event is either the earliest pairwise co-location or a phase
end requested by the controller.  Positions and times are exact
:class:`~rendezvous.exactnum.Scalar` values throughout.
"""

from __future__ import annotations

import bisect
import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Protocol, Sequence

from .errors import PlanError, StallError
from .exactnum import ZERO, Scalar, format_scalar

RobotId = int


@dataclass(frozen=True)
class Configuration:
    """Initial positions indexed by robot id, plus the sorted order of ids."""

    positions: tuple[Scalar, ...]
    order: tuple[RobotId, ...]

    @classmethod
    def from_positions(cls, positions: Iterable) -> "Configuration":
        pos = tuple(Scalar.coerce(p) for p in positions)
        if len(pos) < 2:
            raise ValueError("a configuration needs at least two robots")
        order = tuple(sorted(range(len(pos)), key=lambda i: (pos[i], i)))
        return cls(pos, order)

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def entries(self) -> list[tuple[RobotId, Scalar]]:
        return [(i, self.positions[i]) for i in self.order]

    def __len__(self):
        return len(self.positions)


@dataclass(frozen=True)
class Trajectory:
    breakpoints: tuple[tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        if not self.breakpoints or self.breakpoints[0][0] != 0:
            raise ValueError("trajectory must start at t = 0")
        for (t0, _), (t1, _) in zip(self.breakpoints, self.breakpoints[1:]):
            if not t0 < t1:
                raise ValueError("breakpoint times must be strictly increasing")

    @property
    def times(self) -> list[Scalar]:
        return [t for t, _ in self.breakpoints]

    @property
    def horizon(self) -> Scalar:
        return self.breakpoints[-1][0]

    def slopes(self) -> list[Scalar]:
        bp = self.breakpoints
        return [(x1 - x0) / (t1 - t0) for (t0, x0), (t1, x1) in zip(bp, bp[1:])]


@dataclass(frozen=True)
class MeetEvent:
    time: Scalar
    position: Scalar
    robots: frozenset[RobotId]


@dataclass(frozen=True)
class Plan:
    config: Configuration
    trajectories: tuple[Trajectory, ...]
    events: tuple[MeetEvent, ...]
    all_gather_time: Scalar
    strategy: str = ""
    info: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Violation:
    robot: RobotId
    time: Scalar
    rule: int
    detail: str


# --------------------------------------------------------------------------
# trajectory queries


def position_at(traj: Trajectory, t) -> Scalar:
    t = Scalar.coerce(t)
    if t < 0:
        raise ValueError(f"negative time {t}")
    bp = traj.breakpoints
    k = bisect.bisect_right(traj.times, t) - 1
    t0, x0 = bp[k]
    if k == len(bp) - 1:
        return x0
    t1, x1 = bp[k + 1]
    return x0 + (x1 - x0) * ((t - t0) / (t1 - t0))


def _grid(trajs: Sequence[Trajectory]) -> list[Scalar]:
    times = set()
    for tr in trajs:
        times.update(tr.times)
    return sorted(times)


def _state(traj: Trajectory, t0: Scalar, t1: Scalar | None) -> tuple[Scalar, Scalar]:
    """Position at t0 and slope on [t0, t1] (t1 None means the trailing hold)."""
    x0 = position_at(traj, t0)
    if t1 is None:
        return x0, ZERO
    return x0, (position_at(traj, t1) - x0) / (t1 - t0)


def _first_common_zero(trajs: Sequence[Trajectory]) -> Scalar | None:
    grid = _grid(trajs)
    for k, t0 in enumerate(grid):
        t1 = grid[k + 1] if k + 1 < len(grid) else None
        states = [_state(tr, t0, t1) for tr in trajs]
        x_ref, v_ref = states[0]
        if all(x == x_ref for x, _ in states):
            return t0
        if t1 is None:
            return None
        cand = None
        for x, v in states[1:]:
            if v != v_ref:
                cand = t0 + (x - x_ref) / (v_ref - v)
                break
            if x != x_ref:
                break
        if cand is None or not (t0 <= cand <= t1):
            continue
        dt = cand - t0
        if all(x + v * dt == x_ref + v_ref * dt for x, v in states):
            return cand
    return None


def first_meet_time(a: Trajectory, b: Trajectory) -> Scalar | None:
    return _first_common_zero([a, b])


def gather_time(plan: Plan, subset: Iterable[RobotId]) -> Scalar:
    """First time every robot in ``subset`` occupies the same point."""
    ids = sorted(set(subset))
    if not ids:
        raise ValueError("subset must be non-empty")
    if len(ids) == 1:
        return ZERO
    t = _first_common_zero([plan.trajectories[i] for i in ids])
    if t is None:
        raise PlanError(f"robots {ids} never co-locate within the plan horizon")
    return t


def diameter(config: Configuration, subset: Iterable[RobotId]) -> Scalar:
    pts = [config.positions[i] for i in subset]
    if not pts:
        raise ValueError("subset must be non-empty")
    return max(pts) - min(pts)


def merge_colocated(config: Configuration) -> tuple[Configuration, list[frozenset[RobotId]]]:
    """Group robots sharing a starting point; groups are listed left to right."""
    groups: list[list[RobotId]] = []
    last = None
    for i in config.order:
        p = config.positions[i]
        if groups and p == last:
            groups[-1].append(i)
        else:
            groups.append([i])
        last = p
    return config, [frozenset(g) for g in groups]


def validate_plan(plan: Plan) -> list[Violation]:
    """Check the two movement rules: turn only at own meetings, full speed."""
    meet_times: dict[RobotId, set[Scalar]] = {}
    for ev in plan.events:
        for r in ev.robots:
            meet_times.setdefault(r, set()).add(ev.time)
    G = plan.all_gather_time
    out = []
    for rid, traj in enumerate(plan.trajectories):
        bp = traj.breakpoints
        slopes = traj.slopes()
        for (t0, _), (t1, _), s in zip(bp, bp[1:], slopes):
            if t0 < G and abs(s) != 1:
                out.append(Violation(rid, t0, 2, f"speed {s} on [{t0}, {t1}]"))
        if traj.horizon < G:
            out.append(Violation(rid, traj.horizon, 2, "robot stops before all-gather"))
        for k in range(1, len(slopes)):
            t = bp[k][0]
            if t >= G:
                break
            if slopes[k - 1].sign() != slopes[k].sign() and t not in meet_times.get(rid, ()):
                out.append(Violation(rid, t, 1, "direction change without a meeting"))
    return out


def trajectories_csv(plan: Plan) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["robot", "t", "x"])
    for rid, traj in enumerate(plan.trajectories):
        for t, x in traj.breakpoints:
            w.writerow([rid, format_scalar(t), format_scalar(x)])
    return buf.getvalue()


# --------------------------------------------------------------------------
# event-driven kernel


class Controller(Protocol):
    def step(self, t: Scalar, positions: Sequence[Scalar]) -> tuple[Sequence[int], Scalar | None]:
        """Velocities in {-1, 0, 1} per robot id and an optional absolute
        deadline after which the controller must be consulted again."""
        ...


def _classes(positions: Sequence[Scalar]) -> dict[Scalar, list[RobotId]]:
    out: dict[Scalar, list[RobotId]] = {}
    for i, p in enumerate(positions):
        out.setdefault(p, []).append(i)
    return out


def simulate(
    config: Configuration,
    controller: Controller,
    *,
    strategy: str = "",
    info: dict | None = None,
    max_events: int = 100_000,
) -> Plan:
    n = config.n
    pos = list(config.positions)
    t = ZERO
    bps: list[list[tuple[Scalar, Scalar]]] = [[(ZERO, p)] for p in pos]
    last_vel: list[int | None] = [None] * n
    prev_key: list[tuple] | None = None
    events: list[MeetEvent] = []

    for _ in range(max_events):
        classes = _classes(pos)
        batch = []
        for p, members in classes.items():
            if len(members) < 2:
                continue
            if prev_key is None or len({prev_key[i] for i in members}) > 1:
                batch.append(MeetEvent(t, p, frozenset(members)))
        batch.sort(key=lambda e: (e.position, min(e.robots)))
        events.extend(batch)

        if len(classes) == 1:
            for i in range(n):
                if bps[i][-1][0] != t:
                    bps[i].append((t, pos[i]))
            return Plan(
                config=config,
                trajectories=tuple(Trajectory(tuple(b)) for b in bps),
                events=tuple(events),
                all_gather_time=t,
                strategy=strategy,
                info=info if info is not None else {},
            )

        vel, deadline = controller.step(t, pos)
        vel = list(vel)
        for i in range(n):
            if vel[i] not in (-1, 0, 1):
                raise PlanError(f"robot {i}: velocity {vel[i]} outside {{-1, 0, 1}}")
            if vel[i] != last_vel[i] and t != 0 and bps[i][-1][0] != t:
                bps[i].append((t, pos[i]))

        dt = None
        if deadline is not None:
            if not deadline > t:
                raise PlanError(f"deadline {deadline} not after current time {t}")
            dt = deadline - t
        ranked = sorted(range(n), key=lambda i: (pos[i], vel[i]))
        for i, j in zip(ranked, ranked[1:]):
            if vel[i] > vel[j] and pos[i] != pos[j]:
                d = (pos[j] - pos[i]) / (vel[i] - vel[j])
                if dt is None or d < dt:
                    dt = d
        if dt is None:
            raise StallError(
                f"no future event at t={t} with positions "
                f"{[format_scalar(p) for p in pos]} and velocities {vel}"
            )
        prev_key = [(pos[i], vel[i]) for i in range(n)]
        pos = [pos[i] + dt * vel[i] for i in range(n)]
        t = t + dt
        last_vel = vel

    raise StallError(f"event budget of {max_events} exhausted at t={t}")


class PhaseController:
    """Plays back a fixed list of (duration, velocities) phases."""

    def __init__(self, phases: Sequence[tuple[Scalar, Sequence[int]]]):
        self.phases = [(d, tuple(v)) for d, v in phases if d != 0]
        for d, _ in self.phases:
            if d < 0:
                raise ValueError(f"negative phase duration {d}")
        self.ends = []
        acc = ZERO
        for d, _ in self.phases:
            acc = acc + d
            self.ends.append(acc)

    def step(self, t, positions):
        for end, (_, v) in zip(self.ends, self.phases):
            if t < end:
                return v, end
        raise StallError(f"phase schedule exhausted at t={t} without all robots meeting")
