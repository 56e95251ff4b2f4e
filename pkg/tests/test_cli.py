import json
import subprocess
import sys

import pytest

from ranslice import serialize
from ranslice.cli import main
from ranslice.fixtures import fig2


@pytest.fixture
def fig2_file(tmp_path):
    path = tmp_path / "fig2.json"
    assert main(["fixture", "fig2", "-o", str(path)]) == 0
    return path


def test_solve_rba_on_fig2(fig2_file, tmp_path):
    plan = tmp_path / "plan.json"
    assert main(["solve", "--alg", "rba", "-i", str(fig2_file), "-o", str(plan)]) == 0
    assert len(json.loads(plan.read_text())) == 5
    assert main(["validate", "-i", str(fig2_file), "-p", str(plan)]) == 0


def test_validate_tampered_plan(fig2_file, tmp_path, capsys):
    plan = tmp_path / "plan.json"
    main(["solve", "--alg", "gba", "-i", str(fig2_file), "-o", str(plan)])
    entries = json.loads(plan.read_text())
    hosts = {(e["slice"], e["vnf"]): e["node"] for e in entries}
    # move u2 to a ring node not adjacent to u1's host
    far = (hosts[(0, 0)] + 2) % 5
    for e in entries:
        if (e["slice"], e["vnf"]) == (0, 1):
            e["node"] = far
    plan.write_text(json.dumps(entries))
    assert main(["validate", "-i", str(fig2_file), "-p", str(plan)]) != 0
    assert "connectivity violated" in capsys.readouterr().err


def test_compare_on_knapsack(tmp_path, capsys):
    path = tmp_path / "k.json"
    main(["fixture", "knapsack", "-o", str(path)])
    assert main(["compare", "-i", str(path)]) == 0
    out = capsys.readouterr().out
    assert "exact=2" in out and "rba=1" in out


def test_compare_marks_exact_unavailable(tmp_path, capsys):
    path = tmp_path / "g.json"
    main(["generate", "--seed", "1", "-o", str(path)])
    assert main(["compare", "-i", str(path)]) == 0
    assert "exact=n/a" in capsys.readouterr().out


def test_exact_refuses_large_instance(tmp_path, capsys):
    path = tmp_path / "g.json"
    main(["generate", "--seed", "1", "-o", str(path)])
    assert main(["solve", "--alg", "exact", "-i", str(path)]) == 1
    assert "limited to 10 VNFs" in capsys.readouterr().err


def test_generate_with_degrees(tmp_path):
    path = tmp_path / "g.json"
    assert main(["generate", "--seed", "4", "--regime", "shortage", "--k", "3",
                 "-o", str(path)]) == 0
    inst = serialize.loads_instance(path.read_text())
    assert all(n.capacity <= 4 for n in inst.substrate.nodes)
    assert main(["generate", "--seed", "4", "--k", "3", "--k-prime", "2", "-o", str(path)]) == 0
    inst = serialize.loads_instance(path.read_text())
    assert all(len(sl.links) == len(sl.vnfs) for sl in inst.slices)  # cycles


def test_generate_infeasible_degree(tmp_path, capsys):
    assert main(["generate", "--seed", "1", "--k", "500", "-o", str(tmp_path / "x")]) == 2
    assert "error" in capsys.readouterr().err


def test_sweep_csv(tmp_path):
    spec = {"axis": "substrate_degree", "points": [2, 4], "trials_per_point": 2,
            "timing_repeats": 1, "algorithms": ["rba", "gba"],
            "base": {"regime": "normal", "n_substrate": [20, 30], "vnfs_per_slice": [10, 20]}}
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    out = tmp_path / "r.csv"
    assert main(["sweep", "--spec", str(spec_path), "-o", str(out), "--seed", "5"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("axis,point,algorithm") and len(lines) == 5


@pytest.mark.parametrize("argv", [
    [], ["solve"], ["solve", "--alg", "magic", "-i", "x"],
    ["solve", "--alg", "rba", "-i", "/nonexistent.json"],
    ["validate", "-i", "/nonexistent.json", "-p", "/nonexistent.json"],
])
def test_errors_exit_nonzero(argv):
    assert main(argv) != 0


def test_malformed_instance_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["compare", "-i", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point(fig2_file):
    out = subprocess.run([sys.executable, "-m", "ranslice", "compare", "-i", str(fig2_file)],
                         capture_output=True, text=True, check=True).stdout
    assert out.strip() == "rba=5 cba=5 gcba=5 gba=5 exact=5"


def test_fixture_file_matches_library(fig2_file):
    assert serialize.loads_instance(fig2_file.read_text()) == fig2()
