"""Competitive-ratio evaluation by exhaustive fault-set enumeration.

The offline optimum for a non-faulty set of diameter ``D`` is ``D/2``; the
online time is the first instant the whole non-faulty set is co-located in
the plan.  A zero-diameter non-faulty set gets ratio 1 when it is gathered
at time 0 (undefined otherwise); either way the worst case ignores it and
lists it under ``skipped``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import PlanError, PreconditionError
from .exactnum import ONE, ZERO, Scalar, phi
from .frr import (
    PAIRS,
    FourConfig,
    case_cr,
    case_plan,
    frr_plan,
    pair_terms,
    region_contains,
    select_case,
)
from .line_model import Configuration, Plan, RobotId, diameter, gather_time
from .strategies import make_plan

MODES = ("exactly", "at_most")


@dataclass(frozen=True)
class FaultSet:
    ids: frozenset[RobotId]

    def __iter__(self):
        return iter(sorted(self.ids))

    def __len__(self):
        return len(self.ids)


@dataclass(frozen=True)
class EvalRequest:
    config: Configuration
    f: int
    mode: str = "at_most"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0 <= self.f <= self.config.n - 2:
            raise PreconditionError(
                f"fault budget f={self.f} outside 0..n-2 (n={self.config.n})"
            )

    def fault_sets(self) -> Iterator[FaultSet]:
        sizes = [self.f] if self.mode == "exactly" else range(self.f + 1)
        ids = range(self.config.n)
        for k in sizes:
            for combo in itertools.combinations(ids, k):
                yield FaultSet(frozenset(combo))


@dataclass(frozen=True)
class CrEntry:
    faults: FaultSet
    gather_time: Scalar
    diameter: Scalar
    ratio: Scalar | None

    @property
    def offline_time(self) -> Scalar:
        return self.diameter / 2


@dataclass
class CrReport:
    entries: list[CrEntry]
    worst: Scalar | None
    argmax: FaultSet | None
    skipped: list[CrEntry] = field(default_factory=list)

    def worst_for(self, predicate) -> Scalar | None:
        vals = [
            e.ratio
            for e in self.entries
            if e.ratio is not None and e.diameter != 0 and predicate(e.faults)
        ]
        return max(vals) if vals else None


def offline_time(config: Configuration, nonfaulty: Iterable[RobotId]) -> Scalar:
    return diameter(config, nonfaulty) / 2


def _ratio(T: Scalar, D: Scalar) -> Scalar | None:
    if D == 0:
        return ONE if T == 0 else None
    return T / (D / 2)


def competitive_ratio(plan: Plan, fault_set) -> Scalar | None:
    """Ratio of gather time to the offline optimum; None when undefined."""
    faults = set(fault_set)
    nonfaulty = [i for i in range(plan.config.n) if i not in faults]
    if not nonfaulty:
        raise ValueError("fault set covers every robot")
    return _ratio(gather_time(plan, nonfaulty), diameter(plan.config, nonfaulty))


class GatherIndex:
    """Gather times read off a plan's meeting log.

    Every first co-location of a robot set is the time a new co-location
    class forms, which the kernel logs as a meeting event, so the earliest
    event containing the set gives its gather time.
    """

    def __init__(self, plan: Plan):
        self.events = [(e.time, sum(1 << r for r in e.robots)) for e in plan.events]

    def gather(self, ids: Iterable[RobotId]) -> Scalar:
        mask = 0
        count = 0
        for r in ids:
            mask |= 1 << r
            count += 1
        if count <= 1:
            return ZERO
        for t, m in self.events:
            if mask & ~m == 0:
                return t
        raise PlanError(f"robots {sorted(ids)} never co-locate in the meeting log")


def worst_case_cr(plan: Plan, request: EvalRequest) -> CrReport:
    if request.config.n != plan.config.n:
        raise ValueError("request and plan disagree on the number of robots")
    index = GatherIndex(plan)
    config = plan.config
    entries, skipped = [], []
    worst, argmax = None, None
    for fs in request.fault_sets():
        nonfaulty = [i for i in range(config.n) if i not in fs.ids]
        T = index.gather(nonfaulty)
        D = diameter(config, nonfaulty)
        entry = CrEntry(fs, T, D, _ratio(T, D))
        entries.append(entry)
        if D == 0 or entry.ratio is None:
            skipped.append(entry)
        elif worst is None or entry.ratio > worst:
            worst, argmax = entry.ratio, fs
    return CrReport(entries, worst, argmax, skipped)


# --------------------------------------------------------------------------
# theorem bounds


@dataclass(frozen=True)
class BoundCheck:
    strategy: str
    bound: Scalar
    worst: Scalar | None
    passed: bool
    margin: Scalar | None
    report: CrReport
    plan: Plan


def theorem_bound(strategy: str, n: int, f: int, mode: str = "at_most") -> Scalar:
    """Proved CR bound for ``strategy``; raises when its hypothesis fails."""
    if strategy == "ssi":
        return Scalar(f + 1)
    if strategy in ("doubling", "scaled_doubling"):
        return Scalar(12)
    if strategy == "mtc":
        if n < 3 or 2 * f > n - 1:
            raise PreconditionError(f"MTC bound needs n >= 3 and f <= (n-1)/2 (n={n}, f={f})")
        return Scalar(2)
    if strategy == "three_group":
        if n < 9 or not 3 * f < 2 * (n - 1):
            boundary = " (boundary f = 2(n-1)/3 excluded)" if 3 * f == 2 * (n - 1) else ""
            raise PreconditionError(
                f"three-group bound needs n >= 9 and f < 2(n-1)/3 (n={n}, f={f}){boundary}"
            )
        return Scalar(5)
    if strategy == "frr":
        if n != 4 or f != 2 or mode != "exactly":
            raise PreconditionError(
                f"FRR bound needs n = 4 with exactly f = 2 faults (n={n}, f={f}, mode={mode})"
            )
        return 1 + phi()
    raise ValueError(f"unknown strategy {strategy!r}")


def bound_check(strategy: str, request: EvalRequest, epsilon=None) -> BoundCheck:
    bound = theorem_bound(strategy, request.config.n, request.f, request.mode)
    plan = make_plan(strategy, request.config, request.f, epsilon)
    report = worst_case_cr(plan, request)
    worst = report.worst
    passed = worst is None or worst <= bound
    margin = None if worst is None else bound - worst
    return BoundCheck(strategy, bound, worst, passed, margin, report, plan)


# --------------------------------------------------------------------------
# witness and sample configurations


def lower_bound_witness(n: int, f: int) -> Configuration:
    if n < 3 or not 1 <= f <= n - 2:
        raise PreconditionError(f"witness needs n >= 3 and 1 <= f <= n-2 (n={n}, f={f})")
    left = (f + 2) // 2
    right = (f + 1) // 2
    return Configuration.from_positions([-1] * left + [0] * (n - f - 1) + [1] * right)


def ssi_tightness_config(n: int, f: int, eps) -> Configuration:
    eps = Scalar.coerce(eps)
    if not eps > 0:
        raise PreconditionError("eps must be positive")
    if not 0 <= f <= n - 2:
        raise PreconditionError(f"need 0 <= f <= n-2 (n={n}, f={f})")
    pos = [Scalar(i) for i in range(1, f + 2)]
    pos += [f + 2 + eps] * (n - f - 1)
    return Configuration.from_positions(pos)


def random_config(
    seed: int,
    n: int,
    max_denominator: int = 1,
    span: int = 10,
    *,
    low=0,
    duplicates: bool = False,
) -> Configuration:
    """Seeded sorted rational positions in [low, low + span]."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not duplicates and span * max_denominator + 1 < n:
        raise ValueError("value range too small for n distinct positions")
    rng = random.Random(seed)
    seen: set[Fraction] = set()
    out: list[Fraction] = []
    while len(out) < n:
        den = rng.randint(1, max_denominator)
        v = Fraction(rng.randint(0, span * den), den) + low
        if not duplicates and v in seen:
            continue
        seen.add(v)
        out.append(v)
    out.sort()
    return Configuration.from_positions(out)


# --------------------------------------------------------------------------
# four-robot sweeps


def domain_grid(density: int, *, include_x_one: bool = True) -> Iterator[tuple[Scalar, Scalar]]:
    """Rational points (p/d, q/d) with 0 <= q <= p and p + q <= d."""
    if density < 1:
        raise ValueError("density must be >= 1")
    for p in range(density + 1):
        if p == density and not include_x_one:
            continue
        for q in range(min(p, density - p) + 1):
            yield Scalar(Fraction(p, density)), Scalar(Fraction(q, density))


@dataclass
class LemmaReport:
    points: int
    violations: list[tuple[str, Scalar, Scalar]]
    soundness_skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_lemmas(density: int) -> LemmaReport:
    """Domination of f6 by f1 and f4 by f2, region coverage and region soundness.

    Soundness is checked for x < 1 only: at (1, 0) two CR terms are 0/0 and
    the closed forms carry no meaning there.
    """
    bound = 1 + phi()
    violations = []
    points = skipped = 0
    for x, y in domain_grid(density):
        points += 1
        f = {i: case_cr(i, x, y) for i in range(1, 7)}
        if not f[6] <= f[1]:
            violations.append(("f6<=f1", x, y))
        if not f[4] <= f[2]:
            violations.append(("f4<=f2", x, y))
        inside = {i: region_contains(i, x, y) for i in (3, 4, 5, 6)}
        if not any(inside.values()):
            violations.append(("coverage", x, y))
        if x == 1:
            skipped += 1
            continue
        for i in (3, 4, 5, 6):
            if inside[i] != (f[i] <= bound):
                violations.append((f"region{i}", x, y))
    return LemmaReport(points, violations, skipped)


def four_config(x, y) -> Configuration:
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    return Configuration.from_positions([0, x, 1 - y, 1])


_LETTER = {"a": 0, "b": 1, "c": 2, "d": 3}


def pair_faults(pair: str) -> frozenset[int]:
    keep = {_LETTER[c] for c in pair}
    return frozenset(i for i in range(4) if i not in keep)


def pair_term_mismatches(case: int, x, y) -> list[tuple[str, object, object]]:
    """Compare simulated pair ratios of a meeting order with the closed forms.

    Pairs at distance 0 are gathered at time 0 (ratio 1) while their closed
    form has a zero denominator; they are checked for exactly that.
    """
    fc = FourConfig(x, y)
    plan = case_plan(case, fc)
    index = GatherIndex(plan)
    terms = pair_terms(case, fc.x, fc.y)
    bad = []
    for pair in PAIRS:
        keep = [_LETTER[c] for c in pair]
        T = index.gather(keep)
        D = diameter(plan.config, keep)
        sim = _ratio(T, D)
        want = terms[pair]
        if D == 0:
            ok = sim == ONE and (want == ONE or not isinstance(want, Scalar))
        else:
            ok = sim == want
        if not ok:
            bad.append((pair, sim, want))
    return bad


@dataclass(frozen=True)
class SweepRow:
    x: Scalar
    y: Scalar
    case: int
    worst: Scalar
    worst_pair: FaultSet


def frr_sweep(density: int) -> list[SweepRow]:
    rows = []
    for x, y in domain_grid(density):
        config = four_config(x, y)
        plan = frr_plan(config)
        report = worst_case_cr(plan, EvalRequest(config, 2, "exactly"))
        rows.append(SweepRow(x, y, select_case(x, y), report.worst, report.argmax))
    return rows
