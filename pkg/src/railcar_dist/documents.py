"""JSON instance/plan documents and the plain-text plan table."""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Sequence, Union

from .distributor import Assignment, Carryover, CarryoverEntry, DistributionPlan
from .model import (
    FREE_TRAIN,
    CarGroup,
    Demand,
    Instance,
    Span,
    SpanMode,
    Station,
    TrainDeparture,
    validate_instance,
)
from .network import Leg

_MISSING = object()


class MalformedDocument(ValueError):
    """The document is not valid JSON or does not follow the schema."""


def _field(obj: Any, name: str, path: str, kind=int, default=_MISSING):
    if not isinstance(obj, dict):
        raise MalformedDocument(f"{path}: expected an object")
    if name not in obj or obj[name] is None and default is not _MISSING:
        if default is _MISSING:
            raise MalformedDocument(f"{path}.{name}: missing field" if path else f"{name}: missing field")
        return default
    value = obj[name]
    where = f"{path}.{name}" if path else name
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise MalformedDocument(f"{where}: expected an integer, got {value!r}")
    elif kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedDocument(f"{where}: expected a number, got {value!r}")
    elif kind is str:
        if not isinstance(value, str):
            raise MalformedDocument(f"{where}: expected a string, got {value!r}")
    elif kind is bool:
        if not isinstance(value, bool):
            raise MalformedDocument(f"{where}: expected true/false, got {value!r}")
    elif kind is list:
        if not isinstance(value, list):
            raise MalformedDocument(f"{where}: expected a list")
    elif kind is dict:
        if not isinstance(value, dict):
            raise MalformedDocument(f"{where}: expected an object")
    return value


def instance_from_dict(doc: Dict[str, Any]) -> Instance:
    """Build an :class:`Instance` from a decoded document without validating it."""
    stations = []
    for n, s in enumerate(_field(doc, "stations", "", list)):
        p = f"stations[{n}]"
        override = _field(s, "workload_override", p, float, None)
        stations.append(
            Station(
                id=_field(s, "id", p, str),
                processing_time=_field(s, "processing_time", p),
                cars_present=_field(s, "cars_present", p, int, 0),
                shunting_locos=_field(s, "shunting_locos", p, int, 1),
                draw_out_tracks=_field(s, "draw_out_tracks", p, int, 0),
                workload_override=None if override is None else float(override),
                is_connecting=_field(s, "is_connecting", p, bool, False),
            )
        )
    spans = []
    for n, sp in enumerate(_field(doc, "spans", "", list)):
        p = f"spans[{n}]"
        mode = _field(sp, "mode", p, str, "free")
        try:
            mode = SpanMode(mode)
        except ValueError:
            raise MalformedDocument(f"{p}.mode: expected 'scheduled' or 'free', got {mode!r}") from None
        spans.append(
            Span(_field(sp, "from", p, str), _field(sp, "to", p, str), _field(sp, "travel_time", p), mode)
        )
    departures = []
    for n, d in enumerate(_field(doc, "departures", "", list, [])):
        p = f"departures[{n}]"
        span = _field(d, "span", p, dict)
        departures.append(
            TrainDeparture(
                train_id=_field(d, "train_id", p, str),
                station=_field(d, "station", p, str),
                span=(_field(span, "from", f"{p}.span", str), _field(span, "to", f"{p}.span", str)),
                depart_time=_field(d, "depart_time", p),
                capacity=_field(d, "capacity", p),
            )
        )
    groups = []
    for n, g in enumerate(_field(doc, "groups", "", list)):
        p = f"groups[{n}]"
        located = _field(g, "located", p, dict)
        for st in located:
            _field(located, st, f"{p}.located")
        groups.append(
            CarGroup(
                group_id=_field(g, "group_id", p, str),
                total=_field(g, "total", p),
                located=dict(located),
                priority=_field(g, "priority", p, int, None),
            )
        )
    demands = []
    for n, d in enumerate(_field(doc, "demands", "", list)):
        p = f"demands[{n}]"
        demands.append(
            Demand(
                group_id=_field(d, "group_id", p, str),
                destination=_field(d, "destination", p, str),
                count=_field(d, "count", p),
                loading_area_label=_field(d, "loading_area_label", p, str, None),
            )
        )
    return Instance(
        stations=tuple(stations),
        spans=tuple(spans),
        departures=tuple(departures),
        groups=tuple(groups),
        demands=tuple(demands),
        base_period_length=_field(doc, "base_period_length", ""),
    )


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    return {
        "base_period_length": inst.base_period_length,
        "stations": [
            {
                "id": s.id,
                "processing_time": s.processing_time,
                "cars_present": s.cars_present,
                "shunting_locos": s.shunting_locos,
                "draw_out_tracks": s.draw_out_tracks,
                "workload_override": s.workload_override,
                "is_connecting": s.is_connecting,
            }
            for s in inst.stations
        ],
        "spans": [
            {"from": sp.from_, "to": sp.to, "travel_time": sp.travel_time, "mode": sp.mode.value}
            for sp in inst.spans
        ],
        "departures": [
            {
                "train_id": d.train_id,
                "station": d.station,
                "span": {"from": d.span[0], "to": d.span[1]},
                "depart_time": d.depart_time,
                "capacity": d.capacity,
            }
            for d in inst.departures
        ],
        "groups": [
            {"group_id": g.group_id, "total": g.total, "located": dict(g.located), "priority": g.priority}
            for g in inst.groups
        ],
        "demands": [
            {
                "group_id": d.group_id,
                "destination": d.destination,
                "count": d.count,
                "loading_area_label": d.loading_area_label,
            }
            for d in inst.demands
        ],
    }


def _load(source: Union[str, Path, IO[str]]) -> Any:
    if hasattr(source, "read"):
        text, name = source.read(), getattr(source, "name", "<stream>")
    else:
        text, name = Path(source).read_text(encoding="utf-8"), str(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{name}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_instance(source: Union[str, Path, IO[str]]) -> Instance:
    """Read and validate an instance document from a path or text stream."""
    return validate_instance(instance_from_dict(_load(source)))


def emit_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2, ensure_ascii=False) + "\n"


def plan_to_dict(plan: DistributionPlan) -> Dict[str, Any]:
    return {
        "assignments": [
            {
                "group_id": a.group_id,
                "origin": a.origin,
                "destination": a.destination,
                "count": a.count,
                "cost": a.cost,
                "route": list(a.route),
                "legs": [
                    {"from": leg.from_, "to": leg.to, "train": leg.train_id or FREE_TRAIN}
                    for leg in a.legs
                ],
            }
            for a in plan.assignments
        ],
        "carryover": [
            {"group_id": c.group_id, "origin": c.origin, "destination": c.destination, "count": c.count}
            for c in plan.carryover
        ],
        "iterations_used": plan.iterations_used,
        "total_cost": plan.total_cost,
    }


def plan_from_dict(doc: Dict[str, Any]) -> DistributionPlan:
    assignments = []
    for n, a in enumerate(_field(doc, "assignments", "", list)):
        p = f"assignments[{n}]"
        legs = []
        for m, leg in enumerate(_field(a, "legs", p, list)):
            lp = f"{p}.legs[{m}]"
            train = _field(leg, "train", lp, str)
            legs.append(
                Leg(_field(leg, "from", lp, str), _field(leg, "to", lp, str), None if train == FREE_TRAIN else train)
            )
        assignments.append(
            Assignment(
                group_id=_field(a, "group_id", p, str),
                origin=_field(a, "origin", p, str),
                destination=_field(a, "destination", p, str),
                count=_field(a, "count", p),
                route=tuple(_field(a, "route", p, list)),
                legs=tuple(legs),
                cost=_field(a, "cost", p),
            )
        )
    carryover = [
        Carryover(
            _field(c, "group_id", f"carryover[{n}]", str),
            _field(c, "origin", f"carryover[{n}]", str),
            _field(c, "destination", f"carryover[{n}]", str),
            _field(c, "count", f"carryover[{n}]"),
        )
        for n, c in enumerate(_field(doc, "carryover", "", list))
    ]
    return DistributionPlan(
        assignments, carryover, _field(doc, "iterations_used", ""), _field(doc, "total_cost", "")
    )


def parse_plan(source: Union[str, Path, IO[str]]) -> DistributionPlan:
    return plan_from_dict(_load(source))


def _table(headers: Sequence[str], rows: List[Sequence[str]], numeric: Sequence[int]) -> List[str]:
    widths = [max(len(h), *(len(r[c]) for r in rows)) if rows else len(h) for c, h in enumerate(headers)]

    def fmt(cells):
        out = [
            cell.rjust(w) if c in numeric else cell.ljust(w)
            for c, (cell, w) in enumerate(zip(cells, widths))
        ]
        return "  ".join(out).rstrip()

    return [fmt(headers)] + [fmt(r) for r in rows]


def emit_plan(
    plan: DistributionPlan,
    format: str = "table",
    report: Optional[Sequence[CarryoverEntry]] = None,
) -> str:
    """Render a plan as a text table or as a JSON document.

    ``report`` adds bottleneck trains to the table's carryover section; the
    JSON document always carries the plan alone.
    """
    if format == "structured":
        return json.dumps(plan_to_dict(plan), indent=2, ensure_ascii=False) + "\n"
    if format != "table":
        raise ValueError(f"unknown format {format!r}")

    lines = ["EMPTY RAILCAR DISTRIBUTION PLAN", f"iterations used: {plan.iterations_used}", ""]
    if plan.assignments:
        rows = [
            (
                a.group_id,
                a.origin,
                a.destination,
                str(a.count),
                str(a.cost),
                "→".join(a.route),
                " ".join(leg.train_id or FREE_TRAIN for leg in a.legs) or "-",
            )
            for a in plan.assignments
        ]
        lines += _table(
            ("group", "origin", "destination", "count", "cost", "route", "trains"), rows, (3, 4)
        )
    else:
        lines.append("no assignments")
    lines += ["", "carryover:"]
    if plan.carryover:
        by_key = {(e.group_id, e.origin, e.destination): e for e in report or ()}
        rows = []
        for c in plan.carryover:
            entry = by_key.get((c.group_id, c.origin, c.destination))
            if entry is None:
                note = ""
            elif not entry.reachable:
                note = "unreachable"
            else:
                note = " ".join(entry.bottlenecks) or "-"
            rows.append((c.group_id, c.origin, c.destination, str(c.count), note))
        lines += _table(("group", "origin", "destination", "count", "bottleneck"), rows, (3,))
    else:
        lines.append("none")
    lines += ["", f"total cost: {plan.total_cost} car-minutes"]
    return "\n".join(lines) + "\n"
