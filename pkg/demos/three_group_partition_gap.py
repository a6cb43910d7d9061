"""The three-group split can leave only one group with good robots.

With n = 9 the groups have sizes 3, 2, 4.  Five faults are allowed
(5 < 2*(9-1)/3), which is enough to make the whole left and middle groups
faulty.  The remaining right group is then gathered late.
"""

from rendezvous.evaluation import EvalRequest, random_config, worst_case_cr
from rendezvous.strategies import partition_covers, three_group_partition, three_group_plan

n, f = 9, 5
print("sizes by n:", {m: three_group_partition(m).sizes for m in range(9, 16)})

worst_covered = worst_uncovered = None
for seed in range(60):
    config = random_config(seed, n, max_denominator=6, span=30)
    spec = three_group_partition(n, config)
    report = worst_case_cr(three_group_plan(config, f), EvalRequest(config, f))
    for e in report.entries:
        if e.ratio is None or e.diameter == 0:
            continue
        if partition_covers(spec, config, e.faults.ids):
            worst_covered = e.ratio if worst_covered is None else max(worst_covered, e.ratio)
        elif worst_uncovered is None or e.ratio > worst_uncovered[0]:
            worst_uncovered = (e.ratio, seed, sorted(e.faults.ids))

print(f"worst ratio when two groups keep a good robot: {worst_covered} (~{float(worst_covered):.3f})")
ratio, seed, faults = worst_uncovered
print(f"worst ratio when faults fill two groups: {ratio} (~{float(ratio):.3f}), seed {seed}, faults {faults}")
