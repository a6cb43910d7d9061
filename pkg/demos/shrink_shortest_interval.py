"""How tight is the f+1 bound for shrinking the shortest interval?

Put f robots at 1..f, one at f+1 and the rest just beyond f+2.  If the
faulty robots are the first f, the good ones could meet in (1+eps)/2 time,
but the shortest gaps are all on the left, so the planner wastes time there.
"""

from fractions import Fraction

from rendezvous.evaluation import EvalRequest, ssi_tightness_config, worst_case_cr
from rendezvous.strategies import ssi_plan

n, f = 6, 3
print(f"n={n}, f={f}: bound f+1 = {f + 1}")
for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)):
    config = ssi_tightness_config(n, f, eps)
    plan = ssi_plan(config)
    report = worst_case_cr(plan, EvalRequest(config, f))
    faults = sorted(report.argmax.ids)
    print(f"  eps={str(eps):>6}  worst CR {report.worst} ~ {float(report.worst):.4f}  faults {faults}")

# the phases: each one closes the current shortest gap
config = ssi_tightness_config(n, f, Fraction(1, 10))
for phase in ssi_plan(config).info["phases"]:
    left, right = (sorted(g) for g in phase.pair)
    print(f"  t={str(phase.start):>5}: close gap {phase.gap} between {left} and {right}")
