"""Scale every train's capacity and watch carryover and delivery time respond.

    python scripts/capacity_sweep.py --input instances/capacity_starved.json
    python scripts/capacity_sweep.py --seed 64 --factors 1 2 3 4
"""

import argparse

from railcar_dist.distributor import distribute
from railcar_dist.documents import parse_instance
from railcar_dist.generate import random_instance, scale_capacity
from railcar_dist.model import validate_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--seed", type=int)
    ap.add_argument("--factors", type=int, nargs="+", default=[1, 2, 3, 4])
    args = ap.parse_args()

    inst = parse_instance(args.input) if args.input else validate_instance(random_instance(args.seed))
    print(f"{'factor':>6} {'delivered':>9} {'carryover':>9} {'iterations':>10} {'total_cost':>10} {'min/car':>8}")
    for f in args.factors:
        plan = distribute(scale_capacity(inst, f))
        delivered = sum(a.count for a in plan.assignments)
        per_car = plan.total_cost / delivered if delivered else 0.0
        print(f"{f:>6} {delivered:>9} {plan.carryover_count:>9} {plan.iterations_used:>10} "
              f"{plan.total_cost:>10} {per_car:>8.1f}")


if __name__ == "__main__":
    main()
