"""Built-in acceptance suite.

Each item runs a fixed, seeded experiment and returns an :class:`ItemResult`.
Results are cached so the plan-validation item can inspect every plan the
other items produced without regenerating them.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactnum import Scalar, format_scalar, phi
from .evaluation import (
    EvalRequest,
    GatherIndex,
    domain_grid,
    four_config,
    frr_sweep,
    lower_bound_witness,
    random_config,
    ssi_tightness_config,
    pair_term_mismatches,
    verify_lemmas,
    worst_case_cr,
)
from .frr import CASES, frr_plan, golden_config
from .line_model import Configuration, Plan, validate_plan
from .strategies import (
    doubling_plan,
    mtc_plan,
    partition_covers,
    scaled_doubling_plan,
    ssi_plan,
    three_group_partition,
    three_group_plan,
)


@dataclass
class ItemResult:
    name: str
    passed: bool
    detail: str
    plans: list[Plan] = field(default_factory=list, repr=False)

    def line(self) -> str:
        return f"{self.name}: {self.detail}, {'pass' if self.passed else 'FAIL'}"


def _fmt(v) -> str:
    return "none" if v is None else format_scalar(v)


@functools.lru_cache(maxsize=None)
def ssi_bound(configs: int = 200) -> ItemResult:
    plans, failures = [], []
    for n in range(3, 8):
        for s in range(configs):
            config = random_config(10_000 * n + s, n, max_denominator=8, span=20)
            plan = ssi_plan(config)
            plans.append(plan)
            report = worst_case_cr(plan, EvalRequest(config, n - 2, "at_most"))
            for f in range(n - 1):
                worst = report.worst_for(lambda fs: len(fs) <= f)
                if worst is not None and worst > f + 1:
                    failures.append((n, f, s, worst))
    detail = f"{len(plans)} configs, n=3..7, every f <= n-2; {len(failures)} over f+1"
    return ItemResult("ssi_bound", not failures, detail, plans)


@functools.lru_cache(maxsize=None)
def ssi_tightness() -> ItemResult:
    plans, got = [], []
    for n, f, want in ((4, 2, Fraction(31, 11)), (5, 3, Fraction(41, 11))):
        config = ssi_tightness_config(n, f, Fraction(1, 10))
        plan = ssi_plan(config)
        plans.append(plan)
        worst = worst_case_cr(plan, EvalRequest(config, f, "at_most")).worst
        got.append((n, f, worst, worst == Scalar(want)))
    detail = "; ".join(f"(n={n}, f={f}) worst_cr = {_fmt(w)}" for n, f, w, _ in got)
    return ItemResult("ssi_tightness", all(ok for *_, ok in got), detail, plans)


@functools.lru_cache(maxsize=None)
def doubling_pair_bound(configs: int = 200) -> ItemResult:
    plans, failures = [], []
    for s in range(configs):
        n = 2 + s % 7
        config = random_config(20_000 + s, n, span=100, low=-50)
        plan = doubling_plan(config)
        plans.append(plan)
        index = GatherIndex(plan)
        for i, j in itertools.combinations(range(n), 2):
            d = abs(config.positions[i] - config.positions[j])
            if index.gather((i, j)) > 6 * d:
                failures.append((s, i, j))
    detail = f"{configs} integer configs, n<=8 in [-50,50]; {len(failures)} pairs over 6d"
    return ItemResult("doubling_pair_bound", not failures, detail, plans)


@functools.lru_cache(maxsize=None)
def scaled_doubling_bound(configs: int = 200) -> ItemResult:
    plans, worst_seen, failures = [], None, 0
    for s in range(configs):
        n = 2 + s % 7
        config = random_config(30_000 + s, n, max_denominator=12, span=10, low=-5)
        plan = scaled_doubling_plan(config)
        plans.append(plan)
        worst = worst_case_cr(plan, EvalRequest(config, n - 2, "at_most")).worst
        if worst is not None:
            if worst > 12:
                failures += 1
            if worst_seen is None or worst > worst_seen:
                worst_seen = worst
    detail = f"{configs} rational configs; max worst_cr = {_fmt(worst_seen)}; {failures} over 12"
    return ItemResult("scaled_doubling_bound", not failures, detail, plans)


@functools.lru_cache(maxsize=None)
def mtc_bound(configs: int = 100) -> ItemResult:
    plans, failures = [], 0
    for n in range(3, 10):
        for f in range((n - 1) // 2 + 1):
            for s in range(configs):
                config = random_config(40_000 + 1000 * n + 100 * f + s, n, max_denominator=6, span=20)
                plan = mtc_plan(config, f)
                plans.append(plan)
                worst = worst_case_cr(plan, EvalRequest(config, f, "at_most")).worst
                if worst is not None and worst > 2:
                    failures += 1
    small = Configuration.from_positions([0, 1, 2])
    plan = mtc_plan(small, 1)
    plans.append(plan)
    tight = worst_case_cr(plan, EvalRequest(small, 1, "at_most")).worst
    ok = not failures and tight == 2
    detail = f"{len(plans) - 1} plans over n=3..9; {failures} over 2; {{0,1,2}} f=1 worst_cr = {_fmt(tight)}"
    return ItemResult("mtc_bound", ok, detail, plans)


@functools.lru_cache(maxsize=None)
def three_group_bound(configs: int = 25) -> ItemResult:
    plans, failures, uncovered = [], 0, 0
    worst_seen = None
    for n in range(9, 13):
        fs = [f for f in range(n - 1) if 3 * f < 2 * (n - 1)]
        for f in fs:
            for s in range(configs):
                config = random_config(50_000 + 1000 * n + 100 * f + s, n, max_denominator=6, span=30)
                plan = three_group_plan(config, f)
                plans.append(plan)
                report = worst_case_cr(plan, EvalRequest(config, f, "at_most"))
                w = report.worst
                if w is not None and w > 5:
                    failures += 1
                if w is not None and (worst_seen is None or w > worst_seen):
                    worst_seen = w
                spec = three_group_partition(n, config)
                uncovered += sum(
                    not partition_covers(spec, config, e.faults.ids) for e in report.entries
                )
    detail = (
        f"{len(plans)} plans over n=9..12; max worst_cr = {_fmt(worst_seen)}; "
        f"{failures} over 5; {uncovered} fault sets leaving < 2 groups"
    )
    return ItemResult("three_group_bound", not failures and not uncovered, detail, plans)


@functools.lru_cache(maxsize=None)
def frr_grid(density: int = 40) -> ItemResult:
    bound = 1 + phi()
    rows = frr_sweep(density)
    bad = [r for r in rows if r.worst > bound]
    worst = max(r.worst for r in rows)
    detail = f"{len(rows)} grid points at 1/{density}; max worst_cr = {_fmt(worst)}; {len(bad)} over 1+phi"
    return ItemResult("frr_grid", not bad, detail)


@functools.lru_cache(maxsize=None)
def frr_golden_point() -> ItemResult:
    config = golden_config()
    plan = frr_plan(config)
    worst = worst_case_cr(plan, EvalRequest(config, 2, "exactly")).worst
    ok = worst == 1 + phi()
    detail = f"worst_cr = {_fmt(worst)}" + (" = 1+phi" if ok else "")
    return ItemResult("frr_golden_point", ok, detail, [plan])


@functools.lru_cache(maxsize=None)
def pair_term_agreement(density: int = 40) -> ItemResult:
    checked, bad = 0, []
    for x, y in domain_grid(density):
        for case in CASES:
            checked += 1
            for pair, sim, want in pair_term_mismatches(case, x, y):
                bad.append((case, x, y, pair, sim, want))
    detail = f"{checked} (case, point) plans, 6 pairs each; {len(bad)} mismatches"
    return ItemResult("pair_term_agreement", not bad, detail)


@functools.lru_cache(maxsize=None)
def lemma_sweeps(density: int = 100) -> ItemResult:
    rep = verify_lemmas(density)
    detail = f"{rep.points} grid points at 1/{density}; {len(rep.violations)} violations"
    return ItemResult("lemma_sweeps", rep.ok, detail)


@functools.lru_cache(maxsize=None)
def lower_bound_witness_check() -> ItemResult:
    plans, low, runs = [], [], 0
    for n in range(3, 7):
        for f in (1, 2):
            if f > n - 2:
                continue
            config = lower_bound_witness(n, f)
            candidates: list[tuple[str, Callable[[], Plan], str]] = [("ssi", lambda: ssi_plan(config), "at_most")]
            if 2 * f <= n - 1:
                candidates.append(("mtc", lambda: mtc_plan(config, f), "at_most"))
            if n == 4 and f == 2:
                candidates.append(("frr", lambda: frr_plan(config), "exactly"))
            for name, build, mode in candidates:
                plan = build()
                plans.append(plan)
                runs += 1
                worst = worst_case_cr(plan, EvalRequest(config, f, mode)).worst
                if worst is None or worst < 2:
                    low.append((name, n, f, worst))
    detail = f"{runs} strategy/witness runs; {len(low)} below 2"
    return ItemResult("lower_bound_witness", not low, detail, plans)


SUITE: tuple[Callable[[], ItemResult], ...] = (
    ssi_bound,
    ssi_tightness,
    doubling_pair_bound,
    scaled_doubling_bound,
    mtc_bound,
    three_group_bound,
    frr_grid,
    frr_golden_point,
    pair_term_agreement,
    lemma_sweeps,
    lower_bound_witness_check,
)


def frr_grid_plans(density: int = 40) -> list[Plan]:
    return [frr_plan(four_config(x, y)) for x, y in domain_grid(density)]


@functools.lru_cache(maxsize=None)
def plan_validation() -> ItemResult:
    """Movement rules over every plan the other items generate."""
    per_strategy: dict[str, list[int]] = {}
    plans = [p for item in SUITE for p in item().plans] + frr_grid_plans()
    for plan in plans:
        counts = per_strategy.setdefault(plan.strategy, [0, 0])
        counts[0] += 1
        if validate_plan(plan):
            counts[1] += 1
    parts = [f"{name} {bad}/{total}" for name, (total, bad) in sorted(per_strategy.items())]
    failing = sum(bad for _, bad in per_strategy.values())
    detail = "plans with violations: " + ", ".join(parts)
    return ItemResult("plan_validation", failing == 0, detail)


def run_suite() -> list[ItemResult]:
    return [item() for item in SUITE] + [plan_validation()]
