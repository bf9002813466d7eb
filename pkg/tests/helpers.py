"""Small hand-built instances shared across test modules."""

from railcar_dist.model import (
    CarGroup,
    Demand,
    Instance,
    Span,
    SpanMode,
    Station,
    TrainDeparture,
)

S = SpanMode.SCHEDULED


def three_station_line(**overrides):
    fields = dict(
        stations=(
            Station("A", 10, workload_override=1.2),
            Station("B", 0),
            Station("C", 5, is_connecting=True),
        ),
        spans=(Span("A", "B", 25), Span("B", "C", 15)),
        departures=(),
        groups=(CarGroup("g1", 4, {"A": 4}),),
        demands=(Demand("g1", "C", 4),),
        base_period_length=240,
    )
    fields.update(overrides)
    return Instance(**fields)


def worked_example():
    """Five cars at A for C; A->B runs trains at t=10 and t=50 with room for 3 each."""
    return Instance(
        stations=(
            Station("A", 5),
            Station("B", 5),
            Station("C", 0, is_connecting=True),
        ),
        spans=(Span("A", "B", 20, S), Span("B", "C", 15)),
        departures=(
            TrainDeparture("T1", "A", ("A", "B"), 10, 3),
            TrainDeparture("T2", "A", ("A", "B"), 50, 3),
        ),
        groups=(CarGroup("g1", 5, {"A": 5}),),
        demands=(Demand("g1", "C", 5),),
        base_period_length=120,
    )


def capacity_starved():
    """Six cars at A for B, but the only two trains carry two cars each."""
    return Instance(
        stations=(Station("A", 0), Station("B", 0, is_connecting=True)),
        spans=(Span("A", "B", 10, S),),
        departures=(
            TrainDeparture("T1", "A", ("A", "B"), 10, 2),
            TrainDeparture("T2", "A", ("A", "B"), 20, 2),
        ),
        groups=(CarGroup("g1", 6, {"A": 6}),),
        demands=(Demand("g1", "B", 6),),
        base_period_length=60,
    )
