"""Domain types for a railway transport node and empty-car planning input.

Times are integer minutes counted from the start of the base period.
All types are treated as immutable once an :class:`Instance` is validated.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

FREE_TRAIN = "free"


class SpanMode(str, Enum):
    SCHEDULED = "scheduled"
    FREE = "free"


@dataclass(frozen=True)
class Station:
    id: str
    processing_time: int
    cars_present: int = 0
    shunting_locos: int = 1
    draw_out_tracks: int = 0
    workload_override: Optional[float] = None
    is_connecting: bool = False


@dataclass(frozen=True)
class Span:
    """Directed span between two neighbouring stations."""

    from_: str
    to: str
    travel_time: int
    mode: SpanMode = SpanMode.FREE

    @property
    def key(self) -> Tuple[str, str]:
        return (self.from_, self.to)


@dataclass(frozen=True)
class TrainDeparture:
    train_id: str
    station: str
    span: Tuple[str, str]
    depart_time: int
    capacity: int


@dataclass(frozen=True)
class CarGroup:
    group_id: str
    total: int
    located: Mapping[str, int]
    priority: Optional[int] = None


@dataclass(frozen=True)
class Demand:
    group_id: str
    destination: str
    count: int
    loading_area_label: Optional[str] = None


@dataclass(frozen=True)
class Instance:
    stations: Tuple[Station, ...]
    spans: Tuple[Span, ...]
    departures: Tuple[TrainDeparture, ...]
    groups: Tuple[CarGroup, ...]
    demands: Tuple[Demand, ...]
    base_period_length: int

    @property
    def connecting_station(self) -> str:
        return next(s.id for s in self.stations if s.is_connecting)

    def station(self, station_id: str) -> Station:
        for s in self.stations:
            if s.id == station_id:
                return s
        raise KeyError(station_id)

    def demands_of(self, group_id: str) -> List[Demand]:
        return [d for d in self.demands if d.group_id == group_id]


class ValidationError(ValueError):
    """Raised when an instance violates one or more invariants."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _is_count(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def find_violations(inst: Instance) -> List[str]:
    """Return every invariant violation, each prefixed with a field path."""
    out: List[str] = []

    if not isinstance(inst.base_period_length, int) or inst.base_period_length <= 0:
        out.append("base_period_length: must be a positive number of minutes")
    horizon = inst.base_period_length if isinstance(inst.base_period_length, int) else 0

    station_ids = set()
    for n, s in enumerate(inst.stations):
        path = f"stations[{n}]"
        if s.id in station_ids:
            out.append(f"{path}.id: duplicate station id {s.id}")
        station_ids.add(s.id)
        for name in ("processing_time", "cars_present", "shunting_locos", "draw_out_tracks"):
            if not _is_count(getattr(s, name)):
                out.append(f"{path}.{name}: must be a non-negative integer")
        if s.workload_override is not None and not s.workload_override > 0:
            out.append(f"{path}.workload_override: must be positive")
    n_connecting = sum(1 for s in inst.stations if s.is_connecting)
    if n_connecting == 0:
        out.append("stations: missing connecting station")
    elif n_connecting > 1:
        out.append("stations: exactly one connecting station required")

    span_keys: Dict[Tuple[str, str], Span] = {}
    for n, sp in enumerate(inst.spans):
        path = f"spans[{n}]"
        for end, name in ((sp.from_, "from"), (sp.to, "to")):
            if end not in station_ids:
                out.append(f"span.{name}: unknown station {end} ({path})")
        if sp.from_ == sp.to:
            out.append(f"{path}: from and to must differ")
        if not isinstance(sp.travel_time, int) or sp.travel_time <= 0:
            out.append(f"{path}.travel_time: must be a positive integer")
        if sp.key in span_keys:
            out.append(f"{path}: duplicate span {sp.from_}->{sp.to}")
        span_keys[sp.key] = sp

    train_ids = set()
    spans_with_trains = set()
    for n, d in enumerate(inst.departures):
        path = f"departures[{n}]"
        if d.train_id in train_ids:
            out.append(f"{path}.train_id: duplicate train id {d.train_id}")
        if d.train_id == FREE_TRAIN:
            out.append(f"{path}.train_id: '{FREE_TRAIN}' is reserved")
        train_ids.add(d.train_id)
        if d.station not in station_ids:
            out.append(f"{path}.station: unknown station {d.station}")
        if d.span[0] != d.station:
            out.append(f"{path}.span.from: must equal departure station {d.station}")
        sp = span_keys.get(tuple(d.span))
        if sp is None:
            out.append(f"{path}.span: unknown span {d.span[0]}->{d.span[1]}")
        elif sp.mode is not SpanMode.SCHEDULED:
            out.append(f"{path}.span: span {d.span[0]}->{d.span[1]} is not scheduled")
        else:
            spans_with_trains.add(sp.key)
        if not isinstance(d.capacity, int) or d.capacity < 1:
            out.append(f"{path}.capacity: must be at least 1")
        if not isinstance(d.depart_time, int) or not 0 <= d.depart_time <= horizon:
            out.append(f"{path}.depart_time: outside base period [0, {horizon}]")
    for n, sp in enumerate(inst.spans):
        if sp.mode is SpanMode.SCHEDULED and sp.key not in spans_with_trains:
            out.append(f"spans[{n}]: scheduled span {sp.from_}->{sp.to} has no departures")

    group_ids = set()
    for n, g in enumerate(inst.groups):
        path = f"groups[{n}]"
        if g.group_id in group_ids:
            out.append(f"{path}.group_id: duplicate group id {g.group_id}")
        group_ids.add(g.group_id)
        if not _is_count(g.total):
            out.append(f"{path}.total: must be a non-negative integer")
        for st, cnt in g.located.items():
            if st not in station_ids:
                out.append(f"{path}.located.{st}: unknown station {st}")
            if not _is_count(cnt):
                out.append(f"{path}.located.{st}: must be a non-negative integer")
        if sum(c for c in g.located.values() if isinstance(c, int)) != g.total:
            out.append(f"{path}.total: does not equal the sum of located counts")

    seen_demands = set()
    for n, d in enumerate(inst.demands):
        path = f"demands[{n}]"
        if d.group_id not in group_ids:
            out.append(f"{path}.group_id: unknown group {d.group_id}")
        if d.destination not in station_ids:
            out.append(f"{path}.destination: unknown station {d.destination}")
        if not _is_count(d.count):
            out.append(f"{path}.count: must be a non-negative integer")
        key = (d.group_id, d.destination)
        if key in seen_demands:
            out.append(f"{path}: duplicate demand for group {d.group_id} at {d.destination}")
        seen_demands.add(key)

    if not out:
        out.extend(_connectivity_violations(inst))
    return out


def _connectivity_violations(inst: Instance) -> List[str]:
    active = {d.destination for d in inst.demands if d.count > 0}
    for g in inst.groups:
        active.update(st for st, c in g.located.items() if c > 0)
    if not active:
        return []
    active.add(inst.connecting_station)
    adj = defaultdict(set)
    for sp in inst.spans:
        adj[sp.from_].add(sp.to)
        adj[sp.to].add(sp.from_)
    start = min(active)
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    missing = sorted(active - seen)
    if missing:
        return [f"spans: stations {', '.join(missing)} are disconnected from {start}"]
    return []


def validate_instance(inst: Instance) -> Instance:
    """Return ``inst`` unchanged, or raise :class:`ValidationError` listing every violation."""
    violations = find_violations(inst)
    if violations:
        raise ValidationError(violations)
    return inst


def balance_group(
    group: CarGroup, demands: List[Demand], connecting: str
) -> Tuple[Dict[str, int], Dict[str, int]]:
    """Balance one group's supplies and demands through the connecting station.

    A surplus of cars becomes extra demand at the connecting station (cars are
    returned to the main line); a deficit becomes extra supply there (cars are
    ordered in). Zero entries are dropped.
    """
    supplies = {st: c for st, c in group.located.items() if c > 0}
    wanted: Dict[str, int] = defaultdict(int)
    for d in demands:
        if d.group_id == group.group_id and d.count > 0:
            wanted[d.destination] += d.count
    wanted = dict(wanted)

    gap = sum(supplies.values()) - sum(wanted.values())
    if gap > 0:
        wanted[connecting] = wanted.get(connecting, 0) + gap
    elif gap < 0:
        supplies[connecting] = supplies.get(connecting, 0) - gap
    return dict(sorted(supplies.items())), dict(sorted(wanted.items()))
