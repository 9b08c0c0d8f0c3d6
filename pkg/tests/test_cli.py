import json

from laguerre.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_plane_verify(capsys):
    code, out, _ = run_cli(capsys, "plane", "verify", "--q", "5")
    assert code == 0
    assert "PASS" in out


def test_plane_verify_q2_passes(capsys):
    code, out, _ = run_cli(capsys, "plane", "verify", "--q", "2")
    assert code == 0


def test_group_verify_char2_fails_with_witnesses(capsys):
    code, out, _ = run_cli(capsys, "group", "verify", "--q", "2", "--json")
    assert code == 1
    reports = json.loads(out)
    assert reports[0]["status"] == "fail"
    assert len(reports[0]["witnesses"]) == 4


def test_group_verify_pencil_specs(capsys):
    for spec in ("canonical", "p:0,0", "ideal:2", "p:1,2@K:1,0,1"):
        code, out, _ = run_cli(capsys, "group", "verify", "--q", "5",
                               "--pencil", spec)
        assert code == 0, (spec, out)


def test_group_verify_invalid_pencil(capsys):
    code, _, err = run_cli(capsys, "group", "verify", "--q", "5",
                           "--pencil", "p:0,0@K:1,1,1")
    assert code == 2
    assert "invalid pencil" in err


def test_skewaffine_verify(capsys):
    code, out, _ = run_cli(capsys, "skewaffine", "verify", "--q", "3",
                           "--axiom", "all")
    assert code == 0
    assert out.count("PASS") == 9


def test_skewaffine_sampled_budget(capsys):
    code, out, _ = run_cli(capsys, "skewaffine", "verify", "--q", "5",
                           "--axiom", "T", "--budget", "sample:3000",
                           "--seed", "42", "--json")
    assert code == 0
    rep = json.loads(out)[0]
    assert rep["cases_checked"] == 3000
    assert rep["details"]["seed"] == 42


def test_theorems_run_all(capsys):
    code, out, _ = run_cli(capsys, "theorems", "run", "--q", "3", "--json")
    assert code == 0
    reports = json.loads(out)
    assert len(reports) == 29
    statuses = {r["check_id"]: r["status"] for r in reports}
    assert statuses["L3.1"] == "report_only"
    assert all(s in ("pass", "report_only") for s in statuses.values())


def test_theorems_single_id(capsys):
    code, out, _ = run_cli(capsys, "theorems", "run", "--q", "5",
                           "--id", "P4.6")
    assert code == 0
    assert "P4.6" in out


def test_theorems_deterministic_json(capsys):
    _, out1, _ = run_cli(capsys, "theorems", "run", "--q", "3", "--json")
    _, out2, _ = run_cli(capsys, "theorems", "run", "--q", "3", "--json")
    assert out1 == out2
    assert "elapsed" not in out1


def test_usage_errors(capsys):
    assert run_cli(capsys, "theorems", "run", "--q", "4")[0] == 2
    assert run_cli(capsys, "theorems", "run", "--q", "2")[0] == 2
    assert run_cli(capsys, "theorems", "run", "--q", "5", "--id", "NOPE")[0] == 2
    assert run_cli(capsys, "skewaffine", "verify", "--q", "5",
                   "--axiom", "Q9")[0] == 2
    assert run_cli(capsys, "plane", "verify", "--q", "9")[0] == 2
    assert run_cli(capsys, "plane", "verify", "--q", "211")[0] == 2
    assert run_cli(capsys, "nonsense")[0] == 2


def test_export_plane(tmp_path, capsys):
    out_file = tmp_path / "plane.json"
    code, _, _ = run_cli(capsys, "export", "--q", "3", "--what", "plane",
                         "--out", str(out_file))
    assert code == 0
    blob = json.loads(out_file.read_text())
    assert blob["q"] == 3
    assert len(blob["points"]) == 12
    assert len(blob["circles"]) == 27
    assert blob["points"][0] == {"t": "A", "x": 0, "y": 0}


def test_export_group_round_trip(tmp_path, capsys):
    out_file = tmp_path / "group.json"
    code, _, _ = run_cli(capsys, "export", "--q", "5", "--what", "group",
                         "--out", str(out_file))
    assert code == 0
    blob = json.loads(out_file.read_text())
    assert blob["pencil"]["K"] == [0, 0, 0]
    assert len(blob["elements"]) == 100
    assert blob["elements"] == sorted(blob["elements"])


def test_export_space(tmp_path, capsys):
    out_file = tmp_path / "space.json"
    code, _, _ = run_cli(capsys, "export", "--q", "3", "--what", "space",
                         "--out", str(out_file))
    assert code == 0
    blob = json.loads(out_file.read_text())
    assert len(blob["lines"]) == 39
    kinds = {entry["kind"] for entry in blob["lines"]}
    assert kinds == {"circle_line", "straight_pencil", "special"}
