"""Trajectory-plan generators.

Each generator is a deterministic function of the initial configuration (and,
where the algorithm needs it, the fault budget).  None of them ever sees which
robots are faulty; plans run until every robot has joined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, StallError
from .exactnum import ZERO, Scalar, floor_rational
from .line_model import (
    Configuration,
    MeetEvent,
    Plan,
    RobotId,
    Trajectory,
    merge_colocated,
    simulate,
)

STRATEGIES = ("ssi", "doubling", "scaled_doubling", "mtc", "three_group", "frr")


@dataclass(frozen=True)
class SsiPhase:
    pair: tuple[frozenset[RobotId], frozenset[RobotId]]
    gap: Scalar
    start: Scalar

    @property
    def duration(self) -> Scalar:
        return self.gap / 2


@dataclass(frozen=True)
class DoublingState:
    labels: tuple[int, ...]
    ell: Fraction
    round_index: int


@dataclass(frozen=True)
class ScaledDoublingParams:
    epsilon: Scalar = Scalar(Fraction(1, 10))

    def __post_init__(self):
        if not Scalar.coerce(self.epsilon) > 0:
            raise PreconditionError("epsilon must be positive")


@dataclass(frozen=True)
class PartitionSpec:
    n: int
    k: int
    sizes: tuple[int, int, int]
    m_l: Scalar | None = None
    m_r: Scalar | None = None

    def groups(self, config: Configuration) -> tuple[tuple[RobotId, ...], ...]:
        sl, sm, _ = self.sizes
        o = config.order
        return o[:sl], o[sl:sl + sm], o[sl + sm:]


@dataclass(frozen=True)
class VisitSequence:
    robots: tuple[RobotId, ...]
    reference_point: Scalar
    reference_time: Scalar


def _sign(v: Scalar) -> int:
    return v.sign()


def _visit_sequence(pos: Sequence[Scalar], exclude, ref: Scalar, t: Scalar) -> VisitSequence:
    others = [i for i in range(len(pos)) if i not in exclude]
    others.sort(key=lambda i: (abs(pos[i] - ref), i))
    return VisitSequence(tuple(others), ref, t)


# --------------------------------------------------------------------------
# shrink shortest interval


class _SsiController:
    def __init__(self, config: Configuration):
        _, groups = merge_colocated(config)
        self.groups = [sorted(g) for g in groups]
        self.phases: list[SsiPhase] = []

    def step(self, t, pos):
        merged: list[list[int]] = []
        for g in self.groups:
            if merged and pos[merged[-1][0]] == pos[g[0]]:
                merged[-1].extend(g)
            else:
                merged.append(list(g))
        self.groups = merged
        gaps = [pos[b[0]] - pos[a[0]] for a, b in zip(merged, merged[1:])]
        k = min(range(len(gaps)), key=lambda i: (gaps[i], i))
        self.phases.append(
            SsiPhase((frozenset(merged[k]), frozenset(merged[k + 1])), gaps[k], t)
        )
        vel = [0] * len(pos)
        for gi, g in enumerate(merged):
            for r in g:
                vel[r] = 1 if gi <= k else -1
        return vel, t + gaps[k] / 2


def ssi_plan(config: Configuration) -> Plan:
    ctl = _SsiController(config)
    info: dict = {}
    plan = simulate(config, ctl, strategy="ssi", info=info)
    info["phases"] = tuple(ctl.phases)
    return plan


# --------------------------------------------------------------------------
# doubling


class _DoublingController:
    def __init__(self, labels: Sequence[int], max_rounds: int):
        self.labels = list(labels)
        self.ell = Fraction(1, 2)
        self.round_index = 1
        self.stage = 1
        self.stage_end = Scalar(self.ell)
        self.max_rounds = max_rounds

    def step(self, t, pos):
        while t >= self.stage_end:
            if self.stage == 1:
                self.stage = 2
                self.stage_end = self.stage_end + 2 * self.ell
            else:
                self.ell *= 2
                self.labels = [lab // 2 for lab in self.labels]
                self.round_index += 1
                self.stage = 1
                self.stage_end = self.stage_end + self.ell
                if self.round_index > self.max_rounds:
                    raise StallError(f"doubling did not gather within {self.max_rounds} rounds")
        out = 1 if self.stage == 1 else -1
        return [out if lab % 2 else -out for lab in self.labels], self.stage_end

    @property
    def state(self) -> DoublingState:
        return DoublingState(tuple(self.labels), self.ell, self.round_index)


def doubling_plan(config: Configuration) -> Plan:
    labels = []
    for p in config.positions:
        if not (p.b == 0 and p.a.denominator == 1):
            raise PreconditionError(f"doubling needs integer positions, got {p}")
        labels.append(p.a.numerator)
    if len(set(labels)) != len(labels):
        raise PreconditionError("doubling needs distinct positions")
    span = max(labels) - min(labels)
    ctl = _DoublingController(labels, max_rounds=span.bit_length() + 3)
    info: dict = {}
    plan = simulate(config, ctl, strategy="doubling", info=info)
    info["final_state"] = ctl.state
    info["rounds"] = ctl.round_index
    return plan


def _scale_plan(plan: Plan, config: Configuration, factor: Fraction, strategy: str, info: dict) -> Plan:
    trajs = tuple(
        Trajectory(tuple((t * factor, x * factor) for t, x in tr.breakpoints))
        for tr in plan.trajectories
    )
    events = tuple(
        MeetEvent(e.time * factor, e.position * factor, e.robots) for e in plan.events
    )
    return Plan(config, trajs, events, plan.all_gather_time * factor, strategy, info)


def scaled_doubling_plan(config: Configuration, params: ScaledDoublingParams | None = None) -> Plan:
    """Doubling on rational inputs, scaled by the lcm of the denominators.

    For exactly rational inputs the rational approximation step is the
    identity, so ``epsilon`` only travels along in the plan metadata.
    """
    params = params or ScaledDoublingParams()
    for p in config.positions:
        if p.b != 0:
            raise PreconditionError(f"scaled doubling requires rational positions, got {p}")
    q = math.lcm(*(p.a.denominator for p in config.positions))
    scaled = Configuration.from_positions([p * q for p in config.positions])
    base = doubling_plan(scaled)
    info = {"q": q, "epsilon": params.epsilon, "rounds": base.info["rounds"]}
    return _scale_plan(base, config, Fraction(1, q), "scaled_doubling", info)


# --------------------------------------------------------------------------
# move towards the center


class _MtcController:
    def __init__(self, config: Configuration, f: int):
        n = config.n
        o = config.order
        self.dir = {}
        self.central: set[int] | None = None
        self.sequence: VisitSequence | None = None
        if n >= 2 * f + 2:
            left, right = o[: n // 2], o[n // 2:]
            self.innermost = (o[n // 2 - 1], o[n // 2])
            self.seed = None
        else:
            left, right = o[: n // 2], o[n // 2 + 1:]
            self.innermost = None
            self.seed = o[n // 2]
        for r in left:
            self.dir[r] = 1
        for r in right:
            self.dir[r] = -1

    def _form(self, t, pos, anchor):
        c = pos[anchor]
        self.central = {i for i in range(len(pos)) if pos[i] == c}
        self.sequence = _visit_sequence(pos, self.central, c, t)

    def step(self, t, pos):
        if self.central is None:
            if self.seed is not None:
                self._form(t, pos, self.seed)
            elif pos[self.innermost[0]] == pos[self.innermost[1]]:
                self._form(t, pos, self.innermost[0])
        vel = [self.dir.get(i, 0) for i in range(len(pos))]
        if self.central is not None:
            c = pos[next(iter(self.central))]
            self.central.update(i for i in range(len(pos)) if pos[i] == c)
            target = next((r for r in self.sequence.robots if r not in self.central), None)
            cv = 0 if target is None else _sign(pos[target] - c)
            for i in self.central:
                vel[i] = cv
        return vel, None


def mtc_plan(config: Configuration, f: int) -> Plan:
    n = config.n
    if n < 3:
        raise PreconditionError("MTC needs n >= 3")
    if f < 0 or 2 * f > n - 1:
        raise PreconditionError(f"MTC requires f <= (n-1)/2, got f={f}, n={n}")
    ctl = _MtcController(config, f)
    info: dict = {"f": f}
    plan = simulate(config, ctl, strategy="mtc", info=info)
    info["sequence"] = ctl.sequence
    return plan


# --------------------------------------------------------------------------
# three groups


def three_group_partition(n: int, config: Configuration | None = None) -> PartitionSpec:
    if n < 9:
        raise PreconditionError(f"three-group partition needs n >= 9 (got {n}); use SSI")
    k = floor_rational(Fraction(n, 6) - Fraction(2, 3))
    sizes = (n // 2 - k - 1, 2 * k + 2, (n + 1) // 2 - k - 1)
    m_l = m_r = None
    if config is not None:
        if config.n != n:
            raise ValueError("configuration size does not match n")
        mid = config.order[sizes[0]: sizes[0] + sizes[1]]
        m_l, m_r = config.positions[mid[0]], config.positions[mid[-1]]
    return PartitionSpec(n, k, sizes, m_l, m_r)


def partition_covers(spec: PartitionSpec, config: Configuration, faults) -> bool:
    """True when at least two of the three groups hold a non-faulty robot."""
    faults = set(faults)
    return sum(any(r not in faults for r in g) for g in spec.groups(config)) >= 2


class _ThreeGroupController:
    def __init__(self, config: Configuration, spec: PartitionSpec):
        gl, gm, gr = spec.groups(config)
        pos = config.positions
        self.a_l, self.a_r = gm[0], gm[-1]
        half = (spec.m_l + spec.m_r) / 2
        inner = gm[1:-1]
        self.gl, self.gr = set(gl), set(gr)
        self.lp = {r for r in inner if pos[r] < half}
        self.rp = {r for r in inner if pos[r] >= half}
        self.left = {self.a_l}
        self.right = {self.a_r}
        self.merged: set[int] | None = None
        self.s_l = _visit_sequence(pos, {self.a_l}, spec.m_l, ZERO)
        self.s_r = _visit_sequence(pos, {self.a_r}, spec.m_r, ZERO)
        self.s: VisitSequence | None = None

    @staticmethod
    def _heading(group, seq, pos, here):
        for r in seq.robots:
            if r not in group and pos[r] != here:
                return _sign(pos[r] - here)
        return 0

    def step(self, t, pos):
        n = len(pos)
        if self.merged is None:
            pl, pr = pos[self.a_l], pos[self.a_r]
            self.left.update(r for r in self.gl | self.lp if pos[r] == pl)
            self.right.update(r for r in self.gr | self.rp if pos[r] == pr)
            if pl == pr:
                self.merged = self.left | self.right
                self.s = _visit_sequence(pos, self.merged, pl, t)
        if self.merged is not None:
            here = pos[self.a_l]
            self.merged.update(r for r in range(n) if pos[r] == here)
            pl = pr = here

        vel = [0] * n
        for r in self.gl:
            vel[r] = 1
        for r in self.gr:
            vel[r] = -1
        for r in self.lp:
            vel[r] = _sign(pl - pos[r])
        for r in self.rp:
            vel[r] = _sign(pr - pos[r])
        if self.merged is None:
            hl = self._heading(self.left, self.s_l, pos, pl)
            hr = self._heading(self.right, self.s_r, pos, pr)
            for r in self.left:
                vel[r] = hl
            for r in self.right:
                vel[r] = hr
        else:
            h = self._heading(self.merged, self.s, pos, pl)
            for r in self.merged:
                vel[r] = h
        return vel, None


def three_group_plan(config: Configuration, f: int) -> Plan:
    n = config.n
    if n < 9:
        raise PreconditionError(f"three-group needs n >= 9 (got {n}); use SSI for n <= 8")
    if f < 0 or not 3 * f < 2 * (n - 1):
        raise PreconditionError(
            f"three-group requires f < 2(n-1)/3 (got f={f}, n={n}); use SSI"
        )
    spec = three_group_partition(n, config)
    ctl = _ThreeGroupController(config, spec)
    info: dict = {"f": f, "partition": spec}
    plan = simulate(config, ctl, strategy="three_group", info=info)
    info["sequences"] = {"S_l": ctl.s_l, "S_r": ctl.s_r, "S": ctl.s}
    return plan


def make_plan(name: str, config: Configuration, f: int | None = None, epsilon=None) -> Plan:
    """Dispatch on a strategy selector string."""
    if name == "ssi":
        return ssi_plan(config)
    if name == "doubling":
        return doubling_plan(config)
    if name == "scaled_doubling":
        params = ScaledDoublingParams(Scalar.coerce(epsilon)) if epsilon is not None else None
        return scaled_doubling_plan(config, params)
    if name == "mtc":
        return mtc_plan(config, _need_f(name, f))
    if name == "three_group":
        return three_group_plan(config, _need_f(name, f))
    if name == "frr":
        from .frr import frr_plan

        return frr_plan(config)
    raise ValueError(f"unknown strategy {name!r}; expected one of {', '.join(STRATEGIES)}")


def _need_f(name, f):
    if f is None:
        raise PreconditionError(f"strategy {name} needs the fault budget f")
    return f
