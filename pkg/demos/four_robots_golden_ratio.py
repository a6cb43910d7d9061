"""Four robots, two faulty: where 1+phi comes from.

Every instance normalizes to robots at 0, x, 1-y, 1.  Each of the six
possible meeting orders has a closed-form worst ratio; the best order at the
point x = phi*y, x = 1/(1+phi) costs exactly 1+phi, and no point costs more.
Writes golden.svg next to this script.
"""

from pathlib import Path

from rendezvous.evaluation import EvalRequest, frr_sweep, worst_case_cr
from rendezvous.exactnum import format_decimal, phi
from rendezvous.frr import CASES, case_cr, frr_plan, golden_config, golden_point
from rendezvous.plot import plan_svg

x, y = golden_point()
print(f"golden point x = {x} (~{format_decimal(x, 6)}), y = {y} (~{format_decimal(y, 6)})")
for case in CASES:
    print(f"  meeting order {case}: worst ratio {case_cr(case, x, y)}")

config = golden_config()
plan = frr_plan(config)
worst = worst_case_cr(plan, EvalRequest(config, 2, "exactly")).worst
print(f"chosen order {plan.info['case']}, worst ratio {worst} == 1+phi: {worst == 1 + phi()}")

rows = frr_sweep(20)
top = max(rows, key=lambda r: r.worst)
print(f"grid 1/20: {len(rows)} points, largest worst ratio {top.worst} at ({top.x}, {top.y})")

out = Path(__file__).with_name("golden.svg")
out.write_text(plan_svg(plan, "four robots at the golden point"))
print(f"wrote {out.name}")
