"""Four robots, two of them faulty: the six meeting orders and the 1+phi algorithm.

Instances are normalized so that the outer robots ``a`` and ``d`` sit at 0
and 1, with gaps ``x`` (a-b), ``1-x-y`` (b-c) and ``y`` (c-d), and the mirror
image is taken when needed so that ``y <= x``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, PlanError
from .exactnum import INF, ONE, Scalar, phi
from .line_model import (
    Configuration,
    MeetEvent,
    PhaseController,
    Plan,
    Trajectory,
    simulate,
)

PAIRS = ("ab", "ac", "ad", "bc", "bd", "cd")
CASES = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class FourConfig:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", Scalar.coerce(self.x))
        object.__setattr__(self, "y", Scalar.coerce(self.y))
        if not (0 <= self.y <= self.x <= 1 and self.x + self.y <= 1):
            raise PreconditionError(
                f"(x, y) = ({self.x}, {self.y}) violates 0 <= y <= x <= 1, x + y <= 1"
            )

    @property
    def middle(self) -> Scalar:
        return 1 - self.x - self.y

    def positions(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return Scalar(0), self.x, 1 - self.y, Scalar(1)


@dataclass(frozen=True)
class NormalizationMap:
    shift: Scalar
    scale: Scalar
    reflected: bool
    ids: tuple[int, int, int, int] = (0, 1, 2, 3)

    def position(self, u: Scalar) -> Scalar:
        if self.reflected:
            u = 1 - u
        return self.shift + self.scale * u

    def time(self, t: Scalar) -> Scalar:
        return self.scale * t


def normalize4(config: Configuration) -> tuple[FourConfig, NormalizationMap]:
    if config.n != 4:
        raise PreconditionError(f"four robots expected, got {config.n}")
    o = config.order
    pa, pb, pc, pd = (config.positions[i] for i in o)
    span = pd - pa
    if span == 0:
        raise PreconditionError("all four robots are co-located")
    x = (pb - pa) / span
    y = (pd - pc) / span
    if y > x:
        return FourConfig(y, x), NormalizationMap(pa, span, True, tuple(reversed(o)))
    return FourConfig(x, y), NormalizationMap(pa, span, False, tuple(o))


def _ratio(num: Scalar, den: Scalar):
    if den == 0:
        return INF
    return num / den


# Per-pair CR terms of each meeting order; pairs absent from a case meet in
# optimal time.
def _terms(x: Scalar, y: Scalar) -> dict[int, dict[str, object]]:
    m = 1 - x - y
    return {
        1: {"bc": _ratio(1 - y, m), "bd": _ratio(ONE, 1 - x), "cd": _ratio(ONE, y)},
        2: {"ab": _ratio(1 - y, x), "bd": _ratio(ONE, 1 - x), "cd": _ratio(ONE, y)},
        3: {
            "ab": _ratio(1 - y, x),
            "ac": _ratio(ONE, 1 - y),
            "bd": _ratio(ONE, 1 - x),
            "cd": _ratio(1 - x, y),
        },
        4: {"ab": _ratio(ONE, x), "ac": _ratio(ONE, 1 - y), "cd": _ratio(1 - x, y)},
        5: {"ac": _ratio(ONE, 1 - y), "bc": _ratio(ONE, m), "bd": _ratio(ONE, 1 - x)},
        6: {"ab": _ratio(ONE, x), "ac": _ratio(ONE, 1 - y), "bc": _ratio(1 - x, m)},
    }


def pair_terms(case: int, x, y) -> dict[str, object]:
    """CR of every non-faulty pair under the given meeting order (1 if optimal)."""
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    t = _terms(x, y)[case]
    return {p: t.get(p, ONE) for p in PAIRS}


def case_cr(case: int, x, y):
    """Closed-form competitive ratio of meeting order ``case`` (INF on a zero denominator)."""
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    m = 1 - x - y
    if case == 1:
        return max(_ratio(1 - y, m), _ratio(ONE, y))
    if case == 2:
        return max(_ratio(1 - y, x), _ratio(ONE, y))
    if case == 3:
        return max(_ratio(ONE, 1 - x), _ratio(1 - x, y))
    if case == 4:
        return max(_ratio(ONE, x), _ratio(1 - x, y))
    if case == 5:
        return _ratio(ONE, m)
    if case == 6:
        return max(_ratio(ONE, x), _ratio(1 - x, m))
    raise ValueError(f"case must be in 1..6, got {case}")


def region_contains(i: int, x, y) -> bool:
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    p = phi()
    k = 1 + p
    if i == 3:
        return x <= p / k and y >= (1 - x) / k
    if i == 4:
        return x >= 1 / k and y >= (1 - x) / k
    if i == 5:
        return y <= p / k - x
    if i == 6:
        return x >= 1 / k and y <= p * (1 - x) / k
    raise ValueError(f"regions exist for cases 3..6, got {i}")


def select_case(x, y) -> int:
    for i in (3, 4, 5, 6):
        if region_contains(i, x, y):
            return i
    raise PlanError(f"({x}, {y}) lies in no region; coverage is broken")


_PLUS, _MINUS = 1, -1


def _phases(case: int, x: Scalar, y: Scalar) -> list[tuple[Scalar, tuple[int, ...]]]:
    m = 1 - x - y
    P, M = _PLUS, _MINUS
    table: dict[int, list[tuple[Scalar, tuple[int, ...]]]] = {
        1: [(x, (P, M, M, M)), (m, (P, P, M, M)), (y, (P, P, P, M))],
        2: [(m, (P, P, M, M)), (x, (P, M, M, M)), (y, (P, P, P, M))],
        3: [(m, (P, P, M, M)), (y, (P, M, P, M)), (x - y, (P, M, M, M)), (y, (P, P, M, M))],
        4: [(m, (P, P, M, M)), (y, (P, P, P, M)), (x, (P, M, M, M))],
        5: [(y, (P, M, P, M)), (x - y, (P, M, M, M)), (1 - x, (P, P, M, M))],
        6: [(y, (P, P, P, M)), (m, (P, P, M, M)), (x, (P, M, M, M))],
    }
    if case not in table:
        raise ValueError(f"case must be in 1..6, got {case}")
    return [(d / 2, v) for d, v in table[case]]


def case_durations(case: int, fc: FourConfig) -> list[Scalar]:
    return [d for d, _ in _phases(case, fc.x, fc.y)]


def case_plan(case: int, fc: FourConfig) -> Plan:
    """Plan of meeting order ``case`` in normalized coordinates (ids 0..3 = a..d)."""
    phases = _phases(case, fc.x, fc.y)
    for d, _ in phases:
        if d < 0:
            raise PreconditionError(f"negative phase duration {d}: requires y <= x")
    config = Configuration.from_positions(fc.positions())
    info = {"case": case, "x": fc.x, "y": fc.y, "durations": tuple(d for d, _ in phases)}
    return simulate(config, PhaseController(phases), strategy=f"case{case}", info=info)


def frr_plan(config: Configuration) -> Plan:
    fc, nm = normalize4(config)
    case = select_case(fc.x, fc.y)
    local = case_plan(case, fc)
    trajs: list[Trajectory | None] = [None] * 4
    for k, tr in enumerate(local.trajectories):
        trajs[nm.ids[k]] = Trajectory(
            tuple((nm.time(t), nm.position(u)) for t, u in tr.breakpoints)
        )
    events = [
        MeetEvent(nm.time(e.time), nm.position(e.position), frozenset(nm.ids[r] for r in e.robots))
        for e in local.events
    ]
    events.sort(key=lambda e: (e.time, e.position, min(e.robots)))
    info = {"case": case, "four": fc, "map": nm}
    return Plan(config, tuple(trajs), tuple(events), nm.time(local.all_gather_time), "frr", info)


def golden_point() -> tuple[Scalar, Scalar]:
    p = phi()
    return 1 / (1 + p), 1 / (p * (1 + p))


def golden_config() -> Configuration:
    """Four robots at 0, x, 1-y, 1 with (x, y) the golden point."""
    x, y = golden_point()
    return Configuration.from_positions([0, x, 1 - y, 1])

