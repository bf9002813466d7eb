"""Iterative distribution of empty cars over a scheduled node network.

Each iteration rebuilds route tables against the remaining train room,
solves one transportation problem per car group, then commits the proposed
supplies cheapest-first, cutting each one down to the tightest train on its
route. Whatever does not fit stays at its origin for the next iteration.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .model import Instance, balance_group
from .network import (
    CapacityLedger,
    Leg,
    RouteTable,
    build_network,
    delivery_cost,
    route_table_from,
)
from .transport_lp import (
    InfeasibleTransport,
    TransportInstance,
    solve_transportation,
)

log = logging.getLogger(__name__)

GroupStation = Tuple[str, str]


@dataclass(frozen=True)
class WorkloadInputs:
    cars_present: int
    shunting_locos: int
    draw_out_tracks: int = 0
    cars_per_loco: int = 30
    sigma_max: float = 3.0


@dataclass(frozen=True)
class DistributorConfig:
    # None means 1 + number of scheduled departures
    max_iterations: Optional[int] = None
    sigma_max: float = 3.0
    cars_per_loco: int = 30


@dataclass(frozen=True)
class Assignment:
    group_id: str
    origin: str
    destination: str
    count: int
    route: Tuple[str, ...]
    legs: Tuple[Leg, ...]
    cost: int

    @property
    def trains(self) -> List[str]:
        return [leg.train_id for leg in self.legs if leg.train_id is not None]


@dataclass(frozen=True)
class Carryover:
    group_id: str
    origin: str
    destination: str
    count: int


@dataclass
class DistributionPlan:
    assignments: List[Assignment]
    carryover: List[Carryover]
    iterations_used: int
    total_cost: int

    @property
    def carryover_count(self) -> int:
        return sum(c.count for c in self.carryover)


class InfeasibleInstance(ValueError):
    def __init__(self, group_id: str, origin: str, count: int):
        self.group_id = group_id
        self.origin = origin
        super().__init__(
            f"group {group_id}: {count} cars at {origin} cannot reach any demand "
            "even with every train available"
        )


class WorkloadError(ValueError):
    pass


def workload_factor(inputs: WorkloadInputs) -> float:
    """Default station workload factor: 1 + cars per available loco shift, clamped."""
    if inputs.cars_present == 0:
        return 1.0
    if inputs.shunting_locos < 1:
        raise WorkloadError("cars present at a station with no shunting locomotives")
    sigma = 1.0 + inputs.cars_present / (inputs.shunting_locos * inputs.cars_per_loco)
    return min(max(sigma, 1.0), inputs.sigma_max)


def station_sigmas(inst: Instance, config: DistributorConfig) -> Dict[str, float]:
    sigmas = {}
    for s in inst.stations:
        if s.workload_override is not None:
            sigmas[s.id] = s.workload_override
            continue
        try:
            sigmas[s.id] = workload_factor(
                WorkloadInputs(
                    s.cars_present,
                    s.shunting_locos,
                    s.draw_out_tracks,
                    cars_per_loco=config.cars_per_loco,
                    sigma_max=config.sigma_max,
                )
            )
        except WorkloadError as exc:
            raise WorkloadError(f"station {s.id}: {exc}") from None
    return sigmas


@dataclass
class IterationState:
    supplies: Dict[GroupStation, int]
    demands: Dict[GroupStation, int]
    ledger: CapacityLedger
    stalled: bool = False

    def remaining_supply(self) -> int:
        return sum(self.supplies.values())


def next_iteration_state(
    previous: IterationState,
    committed: Sequence[Assignment],
    undistributed: Sequence[Carryover],
) -> IterationState:
    """Apply one iteration's commitments; undistributed cars stay where they are."""
    supplies = dict(previous.supplies)
    demands = dict(previous.demands)
    ledger = previous.ledger.copy()
    for a in committed:
        supplies[(a.group_id, a.origin)] -= a.count
        demands[(a.group_id, a.destination)] -= a.count
        for train in a.trains:
            ledger.debit(train, a.count)
    supplies = {k: v for k, v in supplies.items() if v > 0}
    demands = {k: v for k, v in demands.items() if v > 0}
    return IterationState(
        supplies, demands, ledger, stalled=not committed and bool(undistributed)
    )


@dataclass(frozen=True)
class _Proposal:
    group_id: str
    origin: str
    destination: str
    count: int
    cost: Optional[int]  # None: no route left this iteration


def _group_order(inst: Instance) -> Dict[str, int]:
    ranked = sorted(
        inst.groups,
        key=lambda g: (g.priority is None, -(g.priority or 0), g.group_id),
    )
    return {g.group_id: n for n, g in enumerate(ranked)}


def initial_state(inst: Instance) -> IterationState:
    supplies: Dict[GroupStation, int] = {}
    demands: Dict[GroupStation, int] = {}
    for g in inst.groups:
        sup, dem = balance_group(g, inst.demands_of(g.group_id), inst.connecting_station)
        supplies.update({(g.group_id, st): c for st, c in sup.items()})
        demands.update({(g.group_id, st): c for st, c in dem.items()})
    return IterationState(supplies, demands, CapacityLedger.from_instance(inst))


def _propose(
    state: IterationState,
    tables: Dict[str, RouteTable],
    group_ids: Iterable[str],
    strict: bool,
) -> List[_Proposal]:
    proposals = []
    for k in group_ids:
        origins = sorted((st, c) for (g, st), c in state.supplies.items() if g == k)
        dests = sorted((st, c) for (g, st), c in state.demands.items() if g == k)
        if not origins:
            continue
        costs = [[delivery_cost(tables[i], j) for j, _ in dests] for i, _ in origins]
        problem = TransportInstance(origins, dests, costs)
        try:
            sol = solve_transportation(problem, strict=strict)
        except InfeasibleTransport as exc:
            raise InfeasibleInstance(k, exc.origin, exc.count) from None
        for r, (i, _) in enumerate(origins):
            for c, (j, _) in enumerate(dests):
                if sol.flows[r][c]:
                    proposals.append(_Proposal(k, i, j, sol.flows[r][c], costs[r][c]))
        for r, c, n in sol.unrouted:
            proposals.append(_Proposal(k, origins[r][0], dests[c][0], n, None))
    return proposals


def _commit(
    proposals: List[_Proposal],
    tables: Dict[str, RouteTable],
    ledger: CapacityLedger,
    order: Dict[str, int],
) -> Tuple[List[Assignment], List[Carryover]]:
    routed = [p for p in proposals if p.cost is not None]
    routed.sort(key=lambda p: (p.cost, order[p.group_id], p.origin, p.destination))
    working = ledger.copy()
    committed, undistributed = [], []
    for p in routed:
        table = tables[p.origin]
        legs = table.legs_to(p.destination)
        trains = [leg.train_id for leg in legs if leg.train_id is not None]
        room = min((working.remaining(t) for t in trains), default=p.count)
        take = min(p.count, room)
        if take > 0:
            for t in trains:
                working.debit(t, take)
            committed.append(
                Assignment(
                    p.group_id,
                    p.origin,
                    p.destination,
                    take,
                    tuple(table.route_to(p.destination)),
                    tuple(legs),
                    p.cost,
                )
            )
        if p.count > take:
            undistributed.append(Carryover(p.group_id, p.origin, p.destination, p.count - take))
    for p in proposals:
        if p.cost is None:
            undistributed.append(Carryover(p.group_id, p.origin, p.destination, p.count))
    return committed, undistributed


def _merge_carryover(entries: Iterable[Carryover]) -> List[Carryover]:
    totals: Dict[Tuple[str, str, str], int] = defaultdict(int)
    for c in entries:
        totals[(c.group_id, c.origin, c.destination)] += c.count
    return [Carryover(*key, n) for key, n in sorted(totals.items()) if n > 0]


def distribute(inst: Instance, config: DistributorConfig = DistributorConfig()) -> DistributionPlan:
    """Plan empty-car supplies and their trains for one base period.

    Raises :class:`InfeasibleInstance` when some group cannot be fully
    routed even before any train room has been used.
    """
    network = build_network(inst, station_sigmas(inst, config))
    order = _group_order(inst)
    max_iterations = config.max_iterations
    if max_iterations is None:
        max_iterations = 1 + len(inst.departures)
    state = initial_state(inst)
    group_ids = sorted(order, key=order.get)

    assignments: List[Assignment] = []
    undistributed: List[Carryover] = []
    iterations = 0
    while state.remaining_supply() > 0 and iterations < max_iterations:
        iterations += 1
        origins = sorted({st for (_, st) in state.supplies})
        tables = {i: route_table_from(i, network, state.ledger) for i in origins}
        proposals = _propose(state, tables, group_ids, strict=iterations == 1)
        committed, undistributed = _commit(proposals, tables, state.ledger, order)
        log.debug(
            "iteration %d: %d proposals, %d committed cars, %d undistributed",
            iterations,
            len(proposals),
            sum(a.count for a in committed),
            sum(c.count for c in undistributed),
        )
        assignments.extend(committed)
        state = next_iteration_state(state, committed, undistributed)
        if state.stalled:
            break

    carryover = _merge_carryover(undistributed) if state.remaining_supply() else []
    total = sum(a.cost * a.count for a in assignments)
    return DistributionPlan(assignments, carryover, iterations, total)


@dataclass(frozen=True)
class CarryoverEntry:
    group_id: str
    origin: str
    destination: str
    count: int
    bottlenecks: Tuple[str, ...]
    reachable: bool


def remaining_capacity(inst: Instance, plan: DistributionPlan) -> CapacityLedger:
    ledger = CapacityLedger.from_instance(inst)
    for a in plan.assignments:
        for t in a.trains:
            ledger.debit(t, a.count)
    return ledger


def carryover_report(
    plan: DistributionPlan, inst: Instance, config: DistributorConfig = DistributorConfig()
) -> List[CarryoverEntry]:
    """Name the trains whose extra room would let each carried-over supply move.

    The cheapest route is recomputed as if every train were empty; the
    bottlenecks are its scheduled legs with the least room left after the plan.
    """
    if not plan.carryover:
        return []
    network = build_network(inst, station_sigmas(inst, config))
    full = CapacityLedger.from_instance(inst)
    left = remaining_capacity(inst, plan)
    tables: Dict[str, RouteTable] = {}
    report = []
    for c in plan.carryover:
        if c.origin not in tables:
            tables[c.origin] = route_table_from(c.origin, network, full)
        table = tables[c.origin]
        if c.destination not in table:
            report.append(CarryoverEntry(c.group_id, c.origin, c.destination, c.count, (), False))
            continue
        trains = [leg.train_id for leg in table.legs_to(c.destination) if leg.train_id]
        tightest = min((left.remaining(t) for t in trains), default=None)
        names = tuple(t for t in trains if left.remaining(t) == tightest)
        report.append(CarryoverEntry(c.group_id, c.origin, c.destination, c.count, names, True))
    return report
