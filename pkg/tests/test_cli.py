import csv
import json
import subprocess
import sys

import pytest

from cspace_einstein import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _without_time(payload):
    return {k: v for k, v in payload.items() if k != "wall_time"}


def test_solve_json(capsys):
    code, out, _ = run(["solve", "-l", "1", "-m", "2", "-n", "3", "--no-cache"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["params"] == {"l": 1, "m": 2, "n": 3, "dim": 24}
    assert len(data["solutions"]) == 2
    first = data["solutions"][0]
    assert list(first) == ["x1", "x2", "x3", "v4", "v5", "c", "lambda",
                           "residual", "method", "condition"]
    assert abs(first["x1"] - 0.472295) < 1e-6 and abs(first["v5"] - 0.60798) < 1e-5
    assert data["family_complete"] is True


def test_solve_deterministic(capsys):
    argv = ["solve", "-l", "3", "-m", "4", "-n", "5", "--no-cache"]
    a = json.loads(run(argv, capsys)[1])
    b = json.loads(run(argv, capsys)[1])
    assert _without_time(a) == _without_time(b)


def test_degenerate_warning(capsys):
    code, out, err = run(["solve", "-l", "1", "-m", "1", "-n", "1", "--no-cache"], capsys)
    assert code == 0
    assert "family-incomplete: degenerate case" in err
    data = json.loads(out)
    assert len(data["solutions"]) == 1 and abs(data["solutions"][0]["lambda"] - 0.25) < 1e-14


def test_cache_roundtrip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = ["solve", "-l", "2", "-m", "3", "-n", "4"]
    code, first, _ = run(argv, capsys)
    assert code == 0
    path = cli.cache_path(tmp_path, 2, 3, 4, "auto")
    assert path.exists()
    code, second, _ = run(argv, capsys)
    assert first == second  # includes wall_time: served from cache bit for bit
    assert not list(tmp_path.glob("*.tmp"))


def test_cache_corruption_recomputes(tmp_path, capsys):
    path = cli.cache_path(tmp_path, 1, 2, 3, "auto")
    path.write_text("{not json")
    code, out, _ = run(["solve", "-l", "1", "-m", "2", "-n", "3", "--cache-dir", str(tmp_path)], capsys)
    assert code == 0
    assert len(json.loads(out)["solutions"]) == 2
    assert json.loads(path.read_text())["solutions"]


def test_extended_precision_strings(capsys):
    code, out, _ = run(["solve", "-l", "1", "-m", "2", "-n", "3", "--precision", "extended",
                        "--no-cache"], capsys)
    assert code == 0
    x1 = json.loads(out)["solutions"][0]["x1"]
    assert isinstance(x1, str) and x1.startswith("0.4722945904054")
    assert len(x1.replace("0.", "", 1)) >= 30


def test_json_and_csv_files(tmp_path, capsys):
    j, c = tmp_path / "out.json", tmp_path / "out.csv"
    code, out, _ = run(["solve", "-l", "3", "-m", "4", "-n", "5", "--no-cache",
                        "--json", str(j), "--csv", str(c)], capsys)
    assert code == 0 and out == ""
    data = json.loads(j.read_text())
    rows = list(csv.DictReader(c.open()))
    assert len(rows) == len(data["solutions"]) == 4
    assert float(rows[0]["x1"]) == data["solutions"][0]["x1"]


@pytest.mark.parametrize("argv", [
    ["solve", "-l", "0", "-m", "1", "-n", "1"],
    ["solve", "-l", "1", "-m", "2"],
    ["solve", "-l", "1", "-m", "2", "-n", "3", "--method", "nope"],
    ["solve", "-l", "1", "-m", "2", "-n", "3", "--tol", "-1"],
    ["solve", "-l", "1", "-m", "2", "-n", "3", "--box", "2", "1"],
    ["reproduce", "--target", "table9"],
    ["degree", "-l", "1", "-m", "2", "-n", "3", "--box", "5", "1"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_numerical_failure_exit_code(capsys):
    code, _, err = run(["solve", "-l", "1", "-m", "2", "-n", "3", "--method", "closed-form",
                        "--no-cache"], capsys)
    assert code == 3 and "error" in err


def test_flag_command(capsys):
    code, out, _ = run(["flag", "-l", "1", "-m", "2", "-n", "3"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["metrics"]) == 4
    signs = [m["jacobian_t0"] > 0 for m in data["metrics"]]
    assert signs == [True, False, False, False]


def test_degree_command(capsys):
    code, out, _ = run(["degree", "-l", "3", "-m", "4", "-n", "5", "--t", "1"], capsys)
    assert code == 0 and json.loads(out)["degree"] == -2
    code, out, err = run(["degree", "-l", "1", "-m", "1", "-n", "1", "--t", "1"], capsys)
    assert code == 0 and json.loads(out)["degree"] is None and "singular" in err


def test_degree_boundary_failure(capsys):
    code, _, err = run(["degree", "-l", "1", "-m", "1", "-n", "1", "--t", "0",
                        "--box", "1", "10"], capsys)
    assert code == 3


def test_classify_command(capsys):
    code, out, _ = run(["classify", "--family", "E"], capsys)
    assert code == 0 and len(json.loads(out)["records"]) == 110
    code, out, _ = run(["classify", "--family", "B", "--rank-max", "3"], capsys)
    names = {r["name"] for r in json.loads(out)["records"] if r["type"] == "abelian"}
    assert names == {"B3/T1"}


def test_reproduce_table2(tmp_path, capsys):
    path = tmp_path / "t2.json"
    code, out, _ = run(["reproduce", "--target", "table2", "--json", str(path)], capsys)
    assert code == 0
    assert out.count(" ok") == 4
    data = json.loads(path.read_text())
    assert all(s["max_deviation"] < 1e-4 for s in data["spaces"])


def test_reproduce_mismatch_exit_code(capsys, monkeypatch):
    from cspace_einstein import reference
    bad = reference.Target("table1", (reference.SpaceRows((1, 2, 3), ((0.5, 1.2),)),))
    monkeypatch.setitem(reference.TARGETS, "table1", bad)
    code, out, _ = run(["reproduce", "--target", "table1"], capsys)
    assert code == 4 and "MISMATCH" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "cspace_einstein", "flag", "-l", "1", "-m", "1", "-n", "1"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["metrics"][0]["x1"] == 1.0
