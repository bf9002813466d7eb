import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import capacity_starved, worked_example
from railcar_dist.distributor import DistributionPlan, InfeasibleInstance, carryover_report, distribute
from railcar_dist.documents import (
    MalformedDocument,
    emit_instance,
    emit_plan,
    instance_to_dict,
    parse_instance,
    parse_plan,
    plan_from_dict,
)
from railcar_dist.generate import random_instance
from railcar_dist.model import ValidationError

MINIMAL = {
    "base_period_length": 60,
    "stations": [{"id": "A", "processing_time": 3}, {"id": "B", "processing_time": 0, "is_connecting": True}],
    "spans": [{"from": "A", "to": "B", "travel_time": 7}],
    "groups": [{"group_id": "g", "total": 2, "located": {"A": 2}}],
    "demands": [{"group_id": "g", "destination": "B", "count": 2}],
}


def test_minimal_document():
    inst = parse_instance(io.StringIO(json.dumps(MINIMAL)))
    assert [s.id for s in inst.stations] == ["A", "B"]
    assert inst.connecting_station == "B"
    assert inst.departures == ()
    assert parse_instance(io.StringIO(emit_instance(inst))) == inst


def test_missing_base_period_named():
    doc = dict(MINIMAL)
    del doc["base_period_length"]
    with pytest.raises(MalformedDocument, match="base_period_length: missing field"):
        parse_instance(io.StringIO(json.dumps(doc)))


def test_negative_capacity_is_a_violation():
    doc = json.loads(emit_instance(capacity_starved()))
    doc["departures"][0]["capacity"] = -3
    with pytest.raises(ValidationError) as err:
        parse_instance(io.StringIO(json.dumps(doc)))
    assert any("departures[0].capacity" in v for v in err.value.violations)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d["stations"][0].update(processing_time="3"), "stations[0].processing_time: expected an integer"),
        (lambda d: d["spans"][0].update(mode="teleport"), "spans[0].mode"),
        (lambda d: d["groups"][0].update(located={"A": 1.5}), "groups[0].located.A"),
        (lambda d: d.update(stations={}), "stations: expected a list"),
        (lambda d: d["demands"][0].pop("count"), "demands[0].count: missing field"),
    ],
)
def test_schema_diagnostics(mutate, fragment):
    doc = json.loads(json.dumps(MINIMAL))
    mutate(doc)
    with pytest.raises(MalformedDocument, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_instance(io.StringIO(json.dumps(doc)))


def test_bad_json_reports_line():
    with pytest.raises(MalformedDocument, match="line 2"):
        parse_instance(io.StringIO('{\n  "stations": [,]\n}'))


def test_shipped_instances_parse(tmp_path):
    for name, build in (("worked_example", worked_example), ("capacity_starved", capacity_starved)):
        assert parse_instance(f"instances/{name}.json") == build()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_instance_round_trip(seed):
    inst = random_instance(seed)
    text = emit_instance(inst)
    again = parse_instance(io.StringIO(text))
    assert again == inst
    assert emit_instance(again) == text


def test_empty_plan_table():
    text = emit_plan(DistributionPlan([], [], 0, 0))
    assert text.startswith("EMPTY RAILCAR DISTRIBUTION PLAN")
    assert "no assignments" in text
    assert "total cost: 0 car-minutes" in text


def test_single_assignment_row():
    inst = worked_example()
    plan = distribute(inst)
    plan.assignments = plan.assignments[:1]
    rows = [line for line in emit_plan(plan).splitlines() if line.startswith("g1")]
    assert len(rows) == 1
    assert "A→B→C" in rows[0] and "T1 free" in rows[0]
    assert rows[0].split()[3] == "3"


def test_carryover_section_lists_bottleneck():
    inst = capacity_starved()
    plan = distribute(inst)
    text = emit_plan(plan, "table", carryover_report(plan, inst))
    section = text.split("carryover:")[1]
    assert "T1" in section and "2" in section


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_plan(DistributionPlan([], [], 0, 0), "xml")


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_plan_round_trip(seed):
    try:
        plan = distribute(random_instance(seed))
    except InfeasibleInstance:
        return
    text = emit_plan(plan, "structured")
    assert parse_plan(io.StringIO(text)) == plan
    assert plan_from_dict(json.loads(text)) == plan


def test_field_names_follow_model():
    doc = instance_to_dict(capacity_starved())
    assert set(doc) == {"stations", "spans", "departures", "groups", "demands", "base_period_length"}
    assert set(doc["departures"][0]) == {"train_id", "station", "span", "depart_time", "capacity"}
    assert set(doc["spans"][0]) == {"from", "to", "travel_time", "mode"}
