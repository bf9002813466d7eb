"""Seeded random node instances for property tests and experiment scripts."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import List, Optional

from .model import (
    CarGroup,
    Demand,
    Instance,
    Span,
    SpanMode,
    Station,
    TrainDeparture,
)

SIGMAS = (1.0, 1.2, 1.25, 1.5, 2.0, 2.5)


@dataclass(frozen=True)
class GeneratorConfig:
    min_stations: int = 2
    max_stations: int = 5
    max_groups: int = 3
    max_supply: int = 20
    max_departures: int = 3
    max_capacity: int = 6
    base_period_length: int = 480
    scheduled_share: float = 0.5
    extra_spans: int = 2


def random_instance(seed: int, cfg: GeneratorConfig = GeneratorConfig()) -> Instance:
    """A connected node with a random timetable, car groups and demands.

    Stations form a random tree with both directions present, plus a few
    one-way chords. Some stations use a fixed workload factor, the rest get
    random yard occupancy.
    """
    rng = random.Random(seed)
    n = rng.randint(cfg.min_stations, cfg.max_stations)
    ids = [f"S{i}" for i in range(n)]
    stations = []
    for i, sid in enumerate(ids):
        override = rng.choice(SIGMAS) if rng.random() < 0.5 else None
        stations.append(
            Station(
                id=sid,
                processing_time=rng.randint(0, 15),
                cars_present=rng.randint(0, 60),
                shunting_locos=rng.randint(1, 3),
                draw_out_tracks=rng.randint(0, 4),
                workload_override=override,
                is_connecting=i == 0,
            )
        )

    pairs = []
    for i in range(1, n):
        j = rng.randrange(i)
        pairs += [(ids[i], ids[j]), (ids[j], ids[i])]
    for _ in range(cfg.extra_spans):
        a, b = rng.sample(ids, 2) if n > 1 else (ids[0], ids[0])
        if a != b and (a, b) not in pairs:
            pairs.append((a, b))

    spans: List[Span] = []
    departures: List[TrainDeparture] = []
    for a, b in pairs:
        scheduled = rng.random() < cfg.scheduled_share
        spans.append(Span(a, b, rng.randint(5, 30), SpanMode.SCHEDULED if scheduled else SpanMode.FREE))
        if scheduled:
            for _ in range(rng.randint(1, cfg.max_departures)):
                departures.append(
                    TrainDeparture(
                        train_id=f"T{len(departures) + 1}",
                        station=a,
                        span=(a, b),
                        depart_time=rng.randint(0, cfg.base_period_length),
                        capacity=rng.randint(1, cfg.max_capacity),
                    )
                )

    n_groups = rng.randint(1, cfg.max_groups)
    budget = rng.randint(1, cfg.max_supply)
    shares = _split(rng, budget, n_groups)
    groups, demands = [], []
    for k, share in enumerate(shares):
        gid = f"G{k + 1}"
        located = {}
        for _ in range(share):
            st = rng.choice(ids)
            located[st] = located.get(st, 0) + 1
        groups.append(
            CarGroup(gid, share, dict(sorted(located.items())), rng.choice((None, None, 1, 2)))
        )
        wanted = max(0, share + rng.randint(-3, 3))
        per_station = {}
        for _ in range(wanted):
            st = rng.choice(ids)
            per_station[st] = per_station.get(st, 0) + 1
        demands += [Demand(gid, st, c) for st, c in sorted(per_station.items())]

    return Instance(
        stations=tuple(stations),
        spans=tuple(spans),
        departures=tuple(departures),
        groups=tuple(groups),
        demands=tuple(demands),
        base_period_length=cfg.base_period_length,
    )


def _split(rng: random.Random, total: int, parts: int) -> List[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def scale_capacity(inst: Instance, factor: int = 2, fixed: Optional[int] = None) -> Instance:
    """Copy of ``inst`` with every train's capacity multiplied, or set to ``fixed``."""
    deps = tuple(
        replace(d, capacity=fixed if fixed is not None else d.capacity * factor)
        for d in inst.departures
    )
    return replace(inst, departures=deps)
