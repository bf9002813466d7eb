"""Run the planner over seeded random nodes and summarise the outcomes.

    python scripts/random_study.py --n 500 --max-stations 5
"""

import argparse
import statistics
from collections import Counter

from railcar_dist.distributor import InfeasibleInstance, distribute
from railcar_dist.generate import GeneratorConfig, random_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--max-stations", type=int, default=5)
    ap.add_argument("--max-groups", type=int, default=3)
    ap.add_argument("--max-supply", type=int, default=20)
    ap.add_argument("--max-capacity", type=int, default=6)
    args = ap.parse_args()

    cfg = GeneratorConfig(
        max_stations=args.max_stations,
        max_groups=args.max_groups,
        max_supply=args.max_supply,
        max_capacity=args.max_capacity,
    )
    iterations = Counter()
    infeasible = 0
    with_carryover = 0
    per_car = []
    for seed in range(args.first_seed, args.first_seed + args.n):
        try:
            plan = distribute(random_instance(seed, cfg))
        except InfeasibleInstance:
            infeasible += 1
            continue
        iterations[plan.iterations_used] += 1
        with_carryover += bool(plan.carryover)
        delivered = sum(a.count for a in plan.assignments)
        if delivered:
            per_car.append(plan.total_cost / delivered)

    solved = args.n - infeasible
    print(f"instances: {args.n}  infeasible: {infeasible}  planned: {solved}")
    print(f"plans with carryover: {with_carryover} ({100 * with_carryover / max(solved, 1):.1f}%)")
    print("iterations used:", ", ".join(f"{k}: {v}" for k, v in sorted(iterations.items())))
    if per_car:
        print(f"mean delivery minutes per car: {statistics.mean(per_car):.1f} "
              f"(median {statistics.median(per_car):.1f})")


if __name__ == "__main__":
    main()
