"""Command-line planner.

Exit status: 0 plan complete, 2 plan has carryover, 1 error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .distributor import (
    DistributorConfig,
    InfeasibleInstance,
    WorkloadError,
    carryover_report,
    distribute,
)
from .documents import MalformedDocument, emit_plan, parse_instance
from .generate import random_instance
from .model import ValidationError, validate_instance

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CARRYOVER = 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="railcar-dist",
        description="Distribute empty railcars to loading stations over the node's train schedule.",
    )
    p.add_argument("--input", type=Path, help="instance JSON document")
    p.add_argument("--output", type=Path, help="write the plan here instead of stdout")
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.add_argument("--max-iterations", type=int, default=None,
                   help="iteration cap (default: 1 + number of scheduled departures)")
    p.add_argument("--sigma-max", type=float, default=3.0, help="upper clamp of the workload factor")
    p.add_argument("--cars-per-loco", type=int, default=30, help="cars one shunting loco handles")
    p.add_argument("--seed", type=int, default=None,
                   help="without --input, plan a randomly generated instance from this seed")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run_cli(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.input is None and args.seed is None:
        print("error: --input is required (or --seed for a generated instance)", file=sys.stderr)
        return EXIT_ERROR
    if args.max_iterations is not None and args.max_iterations < 1:
        print("error: --max-iterations must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    if args.sigma_max <= 0 or args.cars_per_loco < 1:
        print("error: --sigma-max and --cars-per-loco must be positive", file=sys.stderr)
        return EXIT_ERROR

    config = DistributorConfig(
        max_iterations=args.max_iterations,
        sigma_max=args.sigma_max,
        cars_per_loco=args.cars_per_loco,
    )
    try:
        if args.input is not None:
            inst = parse_instance(args.input)
        else:
            inst = validate_instance(random_instance(args.seed))
        plan = distribute(inst, config)
        report = carryover_report(plan, inst, config)
        text = emit_plan(plan, args.format, report)
        if args.output is not None:
            args.output.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except MalformedDocument as exc:
        print(f"error: malformed instance: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValidationError as exc:
        print("error: invalid instance:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_ERROR
    except (InfeasibleInstance, WorkloadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if plan.carryover:
        print(
            f"warning: {plan.carryover_count} cars carried over to the next base period",
            file=sys.stderr,
        )
        return EXIT_CARRYOVER
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())
