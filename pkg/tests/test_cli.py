import json
import shutil
import subprocess
import sys

import pytest

from railcar_dist.cli import EXIT_CARRYOVER, EXIT_ERROR, EXIT_OK, run_cli
from railcar_dist.documents import parse_plan


def test_feasible_instance_exits_zero(tmp_path):
    out = tmp_path / "plan.txt"
    assert run_cli(["--input", "instances/worked_example.json", "--output", str(out)]) == EXIT_OK
    text = out.read_text()
    assert "total cost: 330 car-minutes" in text


def test_carryover_exits_two(tmp_path, capsys):
    out = tmp_path / "plan.txt"
    assert run_cli(["--input", "instances/capacity_starved.json", "--output", str(out)]) == EXIT_CARRYOVER
    assert "carryover:" in out.read_text()
    assert "carried over" in capsys.readouterr().err


def test_missing_file_exits_one(capsys):
    assert run_cli(["--input", "missing.json"]) == EXIT_ERROR
    captured = capsys.readouterr()
    assert "missing.json" in captured.err
    assert captured.out == ""


def test_invalid_instance_exits_one(tmp_path, capsys):
    doc = json.loads(open("instances/capacity_starved.json").read())
    doc["stations"][1]["is_connecting"] = False
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run_cli(["--input", str(bad)]) == EXIT_ERROR
    assert "missing connecting station" in capsys.readouterr().err


def test_no_input_exits_one(capsys):
    assert run_cli([]) == EXIT_ERROR


def test_structured_output_parses(tmp_path):
    out = tmp_path / "plan.json"
    run_cli(["--input", "instances/worked_example.json", "--format", "structured", "--output", str(out)])
    plan = parse_plan(str(out))
    assert [a.count for a in plan.assignments] == [3, 2]


def test_max_iterations_flag(tmp_path):
    out = tmp_path / "plan.json"
    code = run_cli(["--input", "instances/worked_example.json", "--max-iterations", "1",
                    "--format", "structured", "--output", str(out)])
    assert code == EXIT_CARRYOVER
    assert parse_plan(str(out)).iterations_used == 1


def test_sigma_flags_change_dwell(tmp_path):
    doc = json.loads(open("instances/worked_example.json").read())
    # 30 cars and one loco at B: sigma 2 by default, so B's 5-minute dwell becomes 10
    doc["stations"][1].update(cars_present=30, shunting_locos=1)
    node = tmp_path / "node.json"
    node.write_text(json.dumps(doc))

    def cost(*flags):
        out = tmp_path / "plan.json"
        run_cli(["--input", str(node), "--format", "structured", "--output", str(out), *flags])
        return parse_plan(str(out)).total_cost

    assert cost() == 3 * 55 + 2 * 95
    # clamp at 1.5: dwell 7.5 rounds up to 8
    assert cost("--sigma-max", "1.5") == 3 * 53 + 2 * 93
    # 60 cars per loco: sigma 1.5 again
    assert cost("--cars-per-loco", "60") == 3 * 53 + 2 * 93


def test_seeded_generation_is_deterministic(capsys):
    run_cli(["--seed", "11", "--format", "structured"])
    first = capsys.readouterr().out
    run_cli(["--seed", "11", "--format", "structured"])
    assert capsys.readouterr().out == first


@pytest.mark.skipif(shutil.which("railcar-dist") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["railcar-dist", "--input", "instances/capacity_starved.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "railcar_dist", "--input", "instances/worked_example.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "A→B→C" in proc.stdout
