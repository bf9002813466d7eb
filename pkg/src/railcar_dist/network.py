"""Station graph, arc costs and least-time route tables.

A car's potential at a station is the minute it becomes available there,
counted from the base-period start at its origin. Free spans cost the
station dwell plus travel time. Scheduled spans cost the wait for the first
train that departs no earlier than the car is ready and still has room,
plus travel time.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .model import Instance, Span, SpanMode, Station, TrainDeparture


def dwell_minutes(processing_time: int, sigma: float) -> int:
    """``processing_time * sigma`` rounded half-up to whole minutes."""
    exact = Decimal(processing_time) * Decimal(str(sigma))
    return int(exact.quantize(Decimal(1), rounding=ROUND_HALF_UP))


class CapacityLedger:
    """Remaining room per scheduled train.

    Trains whose room drops to zero are no longer available for routing.
    """

    def __init__(self, capacities: Mapping[str, int]):
        self.original: Dict[str, int] = dict(capacities)
        self._remaining: Dict[str, int] = {t: q for t, q in capacities.items() if q > 0}

    @classmethod
    def from_instance(cls, inst: Instance) -> "CapacityLedger":
        return cls({d.train_id: d.capacity for d in inst.departures})

    def remaining(self, train_id: str) -> int:
        return self._remaining.get(train_id, 0)

    def __contains__(self, train_id: str) -> bool:
        return train_id in self._remaining

    def debit(self, train_id: str, count: int) -> None:
        left = self.remaining(train_id) - count
        if count < 0 or left < 0:
            raise ValueError(f"cannot debit {count} cars from train {train_id}")
        if left == 0:
            self._remaining.pop(train_id, None)
        else:
            self._remaining[train_id] = left

    def copy(self) -> "CapacityLedger":
        new = CapacityLedger(self.original)
        new._remaining = dict(self._remaining)
        return new

    def snapshot(self) -> Dict[str, int]:
        return {t: self.remaining(t) for t in self.original}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CapacityLedger)
            and self.original == other.original
            and self._remaining == other._remaining
        )

    def __repr__(self) -> str:
        return f"CapacityLedger({self.snapshot()!r})"


@dataclass(frozen=True)
class ArcCostResult:
    cost: int
    chosen_train: Optional[str]
    wait: int


@dataclass
class Network:
    stations: Dict[str, Station]
    spans: Dict[Tuple[str, str], Span]
    out_spans: Dict[str, List[Span]]
    # per span, sorted by depart_time; equal times keep input order
    departures: Dict[Tuple[str, str], List[TrainDeparture]]
    sigma: Dict[str, float]
    base_period_length: int

    def dwell(self, station_id: str) -> int:
        return dwell_minutes(self.stations[station_id].processing_time, self.sigma[station_id])

    def arc_cost(
        self, span: Span, p_i: int, ledger: CapacityLedger
    ) -> Optional[ArcCostResult]:
        station = self.stations[span.from_]
        if span.mode is SpanMode.FREE:
            return static_arc_cost(station, span, self.sigma[span.from_])
        return scheduled_arc_cost(
            station, span, self.departures.get(span.key, []), p_i, ledger, self.sigma[span.from_]
        )


def build_network(inst: Instance, sigma: Optional[Mapping[str, float]] = None) -> Network:
    """Index a validated instance for routing.

    ``sigma`` maps station id to workload factor. Stations missing from it
    use their ``workload_override`` or 1.0.
    """
    sigma = dict(sigma or {})
    for s in inst.stations:
        if s.id not in sigma:
            sigma[s.id] = s.workload_override if s.workload_override is not None else 1.0
    out_spans: Dict[str, List[Span]] = {s.id: [] for s in inst.stations}
    for sp in inst.spans:
        out_spans[sp.from_].append(sp)
    for lst in out_spans.values():
        lst.sort(key=lambda sp: sp.to)
    departures: Dict[Tuple[str, str], List[TrainDeparture]] = {}
    for d in inst.departures:
        departures.setdefault(tuple(d.span), []).append(d)
    for lst in departures.values():
        lst.sort(key=lambda d: d.depart_time)  # stable
    return Network(
        stations={s.id: s for s in inst.stations},
        spans={sp.key: sp for sp in inst.spans},
        out_spans=out_spans,
        departures=departures,
        sigma=sigma,
        base_period_length=inst.base_period_length,
    )


def static_arc_cost(station: Station, span: Span, sigma: float) -> ArcCostResult:
    if span.mode is not SpanMode.FREE:
        raise ValueError(f"span {span.from_}->{span.to} is scheduled")
    dwell = dwell_minutes(station.processing_time, sigma)
    return ArcCostResult(cost=dwell + span.travel_time, chosen_train=None, wait=dwell)


def scheduled_arc_cost(
    station: Station,
    span: Span,
    departures: Sequence[TrainDeparture],
    p_i: int,
    ledger: CapacityLedger,
    sigma: float,
) -> Optional[ArcCostResult]:
    """Cost of catching the earliest usable train on ``span``; ``None`` if none is left.

    ``departures`` must be sorted by departure time.
    """
    if span.mode is not SpanMode.SCHEDULED:
        raise ValueError(f"span {span.from_}->{span.to} is free")
    ready = p_i + dwell_minutes(station.processing_time, sigma)
    for dep in departures:
        if dep.depart_time >= ready and dep.train_id in ledger:
            wait = dep.depart_time - p_i
            return ArcCostResult(cost=wait + span.travel_time, chosen_train=dep.train_id, wait=wait)
    return None


@dataclass(frozen=True)
class Leg:
    from_: str
    to: str
    train_id: Optional[str]


@dataclass(frozen=True)
class RouteEntry:
    potential: int
    predecessor: Optional[str]
    leg_train: Optional[str]
    legs: int


@dataclass
class RouteTable:
    origin: str
    entries: Dict[str, RouteEntry] = field(default_factory=dict)

    def __contains__(self, station_id: str) -> bool:
        return station_id in self.entries

    def potential(self, station_id: str) -> int:
        return self.entries[station_id].potential

    def route_to(self, station_id: str) -> List[str]:
        route = [station_id]
        while route[-1] != self.origin:
            route.append(self.entries[route[-1]].predecessor)
        return route[::-1]

    def legs_to(self, station_id: str) -> List[Leg]:
        route = self.route_to(station_id)
        return [Leg(a, b, self.entries[b].leg_train) for a, b in zip(route, route[1:])]


def route_table_from(origin: str, network: Network, ledger: CapacityLedger) -> RouteTable:
    """Label-setting search from ``origin`` over the current ledger.

    Arc costs are evaluated at the tentative potential of the tail station,
    which is valid because arrival times are non-decreasing in departure
    readiness. Ties go to fewer legs, then to the smaller predecessor id.
    """
    best: Dict[str, Tuple[int, int, str]] = {origin: (0, 0, "")}
    entries: Dict[str, RouteEntry] = {}
    pending: Dict[str, RouteEntry] = {origin: RouteEntry(0, None, None, 0)}
    heap = [(0, 0, origin)]
    while heap:
        p, legs, node = heapq.heappop(heap)
        if node in entries or best[node][:2] != (p, legs):
            continue
        entries[node] = pending[node]
        for span in network.out_spans[node]:
            if span.to in entries:
                continue
            arc = network.arc_cost(span, p, ledger)
            if arc is None:
                continue
            label = (p + arc.cost, legs + 1, node)
            if span.to not in best or label < best[span.to]:
                best[span.to] = label
                pending[span.to] = RouteEntry(label[0], node, arc.chosen_train, label[1])
                heapq.heappush(heap, (label[0], label[1], span.to))
    return RouteTable(origin, entries)


def delivery_cost(table: RouteTable, station_id: str) -> Optional[int]:
    """Minutes to deliver from the table's origin to ``station_id``; ``None`` if unreachable."""
    entry = table.entries.get(station_id)
    return None if entry is None else entry.potential
