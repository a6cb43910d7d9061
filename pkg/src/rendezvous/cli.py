"""Command-line front end.

    rendezvous simulate  CONFIG [--format csv|json|svg]
    rendezvous evaluate  CONFIG [--mode exactly|at-most] [--format json|csv]
    rendezvous plot      CONFIG
    rendezvous sweep     [--grid D]
    rendezvous verify    [--format json]

CONFIG is a JSON file, or ``-`` for stdin.  Exit codes: 0 ok, 2 bad
configuration, 3 precondition failure, 4 failed verification, 5 stall or
internal inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .errors import PlanError, PreconditionError
from .evaluation import (
    CrReport,
    EvalRequest,
    frr_sweep,
    random_config,
    theorem_bound,
    worst_case_cr,
)
from .exactnum import Scalar, ScalarParseError, format_decimal, format_scalar, parse_scalar
from .line_model import Configuration, Plan, trajectories_csv
from .plot import plan_svg
from .strategies import STRATEGIES, make_plan

EXIT_OK, EXIT_CONFIG, EXIT_PRECONDITION, EXIT_VERIFY, EXIT_INTERNAL = 0, 2, 3, 4, 5

FIELDS = ("positions", "n", "f", "algorithm", "mode", "epsilon", "seed", "grid")


class ConfigError(ValueError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path


@dataclass
class RunConfig:
    positions: list[Scalar]
    f: int
    algorithm: str
    mode: str = "at_most"
    epsilon: Scalar | None = None
    seed: int | None = None
    grid: int | None = None

    @property
    def configuration(self) -> Configuration:
        return Configuration.from_positions(self.positions)

    def request(self) -> EvalRequest:
        return EvalRequest(self.configuration, self.f, self.mode)

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "positions": [format_scalar(p) for p in self.positions],
            "f": self.f,
            "mode": self.mode,
            "epsilon": None if self.epsilon is None else format_scalar(self.epsilon),
        }


def _mode(text: str, path: str) -> str:
    norm = text.replace("-", "_")
    if norm not in ("exactly", "at_most"):
        raise ConfigError(path, f"expected 'exactly' or 'at-most', got {text!r}")
    return norm


def _int(doc: dict, key: str, *, required=False) -> int | None:
    v = doc.get(key)
    if v is None:
        if required:
            raise ConfigError(key, "missing required field")
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(key, f"expected an integer, got {v!r}")
    return v


def _scalar(text, path: str) -> Scalar:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ConfigError(path, f"expected a scalar string, got {text!r}")
    try:
        return parse_scalar(str(text))
    except ScalarParseError as e:
        raise ConfigError(path, str(e)) from None


def parse_config(doc, seed: int | None = None) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("$", "config must be a JSON object")
    unknown = sorted(set(doc) - set(FIELDS))
    if unknown:
        raise ConfigError(unknown[0], "unknown field")
    algorithm = doc.get("algorithm")
    if algorithm not in STRATEGIES:
        raise ConfigError("algorithm", f"expected one of {', '.join(STRATEGIES)}, got {algorithm!r}")
    seed = _int(doc, "seed") if seed is None else seed
    if "positions" in doc:
        raw = doc["positions"]
        if not isinstance(raw, list):
            raise ConfigError("positions", "expected a list of scalar strings")
        positions = [_scalar(p, f"positions[{i}]") for i, p in enumerate(raw)]
    elif "n" in doc:
        n = _int(doc, "n")
        if n < 2:
            raise ConfigError("n", "need at least two robots")
        positions = list(random_config(seed or 0, n, max_denominator=8, span=20).positions)
    else:
        raise ConfigError("positions", "missing required field (or give n and seed)")
    if len(positions) < 2:
        raise ConfigError("positions", "need at least two robots")
    f = _int(doc, "f", required=True)
    if not 0 <= f <= len(positions) - 2:
        raise ConfigError("f", f"must satisfy 0 <= f <= n-2 = {len(positions) - 2}, got {f}")
    mode = _mode(doc.get("mode", "at-most"), "mode")
    eps = doc.get("epsilon")
    epsilon = None if eps is None else _scalar(eps, "epsilon")
    grid = _int(doc, "grid")
    cfg = RunConfig(positions, f, algorithm, mode, epsilon, seed, grid)
    _check_applicable(cfg)
    return cfg


def _check_applicable(cfg: RunConfig) -> None:
    """Surface strategy input requirements before any simulation."""
    if cfg.algorithm == "doubling":
        for i, p in enumerate(cfg.positions):
            if not (p.is_rational and p.as_fraction().denominator == 1):
                raise PreconditionError(f"positions[{i}]: doubling needs integer positions, got {p}")
    if cfg.algorithm == "scaled_doubling":
        for i, p in enumerate(cfg.positions):
            if not p.is_rational:
                raise PreconditionError(f"positions[{i}]: scaled doubling needs rational positions")
    if cfg.algorithm == "frr" and len(cfg.positions) != 4:
        raise PreconditionError(f"positions: frr needs exactly 4 robots, got {len(cfg.positions)}")


def load_config(source: str, seed: int | None = None) -> RunConfig:
    try:
        if source == "-":
            doc = json.load(sys.stdin)
        else:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
    except OSError as e:
        raise ConfigError("$", f"cannot read {source}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ConfigError("$", f"invalid JSON: {e}") from None
    return parse_config(doc, seed)


# --------------------------------------------------------------------------
# reports


def _exact(v) -> str | None:
    return None if v is None else format_scalar(v)


def _dec(v) -> str | None:
    return None if v is None else format_decimal(v)


def run_report(cfg: RunConfig, plan: Plan, report: CrReport) -> dict:
    try:
        bound = theorem_bound(cfg.algorithm, len(cfg.positions), cfg.f, cfg.mode)
    except PreconditionError:
        bound = None
    worst = report.worst
    verdict = None if bound is None else (worst is None or worst <= bound)
    rows = []
    for e in report.entries:
        rows.append(
            {
                "fault_ids": sorted(e.faults.ids),
                "T": format_scalar(e.gather_time),
                "D": format_scalar(e.diameter),
                "cr_exact": _exact(e.ratio),
                "cr_decimal": _dec(e.ratio),
            }
        )
    return {
        "config": cfg.to_json(),
        "plan": {
            "strategy": plan.strategy,
            "all_gather_time": format_scalar(plan.all_gather_time),
            "all_gather_decimal": format_decimal(plan.all_gather_time),
            "events": len(plan.events),
        },
        "rows": rows,
        "skipped": [sorted(e.faults.ids) for e in report.skipped],
        "worst_cr_exact": _exact(worst),
        "worst_cr_decimal": _dec(worst),
        "worst_fault_ids": None if report.argmax is None else sorted(report.argmax.ids),
        "bound": _exact(bound),
        "bound_decimal": _dec(bound),
        "pass": verdict,
    }


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["fault_ids", "T", "D", "cr_exact", "cr_decimal"])
        for r in report["rows"]:
            w.writerow(
                [" ".join(map(str, r["fault_ids"])), r["T"], r["D"], r["cr_exact"] or "", r["cr_decimal"] or ""]
            )
        return buf.getvalue().encode()
    raise ValueError(f"unsupported report format {fmt!r}")


def sweep_csv(density: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "case", "worst_cr", "worst_fault_pair", "x_decimal", "y_decimal", "worst_cr_decimal"])
    letters = "abcd"
    for row in frr_sweep(density):
        pair = "".join(letters[i] for i in range(4) if i not in row.worst_pair.ids)
        w.writerow(
            [
                format_scalar(row.x),
                format_scalar(row.y),
                row.case,
                format_scalar(row.worst),
                pair,
                format_decimal(row.x),
                format_decimal(row.y),
                format_decimal(row.worst),
            ]
        )
    return buf.getvalue()


# --------------------------------------------------------------------------
# commands


def _load(args) -> RunConfig:
    cfg = load_config(args.config, args.seed)
    if getattr(args, "mode", None):
        cfg.mode = _mode(args.mode, "--mode")
    if getattr(args, "epsilon", None) is not None:
        cfg.epsilon = _scalar(args.epsilon, "--epsilon")
    return cfg


def _plan(cfg: RunConfig) -> Plan:
    return make_plan(cfg.algorithm, cfg.configuration, cfg.f, cfg.epsilon)


def cmd_simulate(args) -> tuple[int, bytes]:
    cfg = _load(args)
    plan = _plan(cfg)
    fmt = args.format or "csv"
    if fmt == "csv":
        return EXIT_OK, trajectories_csv(plan).encode()
    if fmt == "svg":
        return EXIT_OK, plan_svg(plan).encode()
    if fmt == "json":
        doc = {
            "config": cfg.to_json(),
            "all_gather_time": format_scalar(plan.all_gather_time),
            "events": [
                {"t": format_scalar(e.time), "x": format_scalar(e.position), "robots": sorted(e.robots)}
                for e in plan.events
            ],
            "trajectories": [
                [[format_scalar(t), format_scalar(x)] for t, x in tr.breakpoints] for tr in plan.trajectories
            ],
        }
        return EXIT_OK, (json.dumps(doc, indent=2) + "\n").encode()
    raise ConfigError("--format", f"simulate writes csv, json or svg, not {fmt}")


def cmd_evaluate(args) -> tuple[int, bytes]:
    cfg = _load(args)
    plan = _plan(cfg)
    report = run_report(cfg, plan, worst_case_cr(plan, cfg.request()))
    fmt = args.format or "json"
    if fmt not in ("json", "csv"):
        raise ConfigError("--format", f"evaluate writes json or csv, not {fmt}")
    code = EXIT_VERIFY if report["pass"] is False else EXIT_OK
    return code, emit_report(report, fmt)


def cmd_plot(args) -> tuple[int, bytes]:
    cfg = _load(args)
    if args.format not in (None, "svg"):
        raise ConfigError("--format", "plot writes svg only")
    return EXIT_OK, plan_svg(_plan(cfg)).encode()


def cmd_sweep(args) -> tuple[int, bytes]:
    if args.format not in (None, "csv"):
        raise ConfigError("--format", "sweep writes csv only")
    if args.grid < 1:
        raise ConfigError("--grid", "grid density must be positive")
    return EXIT_OK, sweep_csv(args.grid).encode()


def cmd_verify(args) -> tuple[int, bytes]:
    from .verify import SUITE, plan_validation

    results = []
    for item in (*SUITE, plan_validation):
        r = item()
        results.append(r)
        if args.format != "json" and args.out is None:
            print(r.line(), flush=True)
    ok = all(r.passed for r in results)
    if args.format == "json":
        doc = [{"item": r.name, "pass": r.passed, "detail": r.detail} for r in results]
        body = json.dumps(doc, indent=2) + "\n"
    elif args.out is not None:
        body = "".join(r.line() + "\n" for r in results)
    else:
        body = ""
    return (EXIT_OK if ok else EXIT_VERIFY), body.encode()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rendezvous", description="Exact rendezvous planning on the line.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("config", nargs="?", default="-", help="JSON run config, '-' for stdin")
            p.add_argument("--mode", choices=("exactly", "at-most"))
            p.add_argument("--epsilon", help="scaled-doubling precision, exactnum syntax")
            p.add_argument("--seed", type=int, help="seed for configs given by n")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "csv", "svg"))
        return p

    common(sub.add_parser("simulate", help="generate a plan and print its trajectories"))
    common(sub.add_parser("evaluate", help="worst-case competitive ratio over fault sets"))
    common(sub.add_parser("plot", help="space-time diagram as SVG"))
    sw = common(sub.add_parser("sweep", help="four-robot grid of worst-case ratios"), config=False)
    sw.add_argument("--grid", type=int, default=40, help="grid density d (points p/d)")
    common(sub.add_parser("verify", help="run the built-in acceptance suite"), config=False)
    return parser


COMMANDS = {
    "simulate": cmd_simulate,
    "evaluate": cmd_evaluate,
    "plot": cmd_plot,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, body = COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PlanError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(body)
    else:
        sys.stdout.buffer.write(body)
        sys.stdout.flush()
    return code
