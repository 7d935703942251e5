"""CLI subcommands: exit codes, JSON output, cache, reproducibility."""

import json

from mbt.cli import run


def test_solve_text(capsys):
    assert run(["solve", "--board", "K:4", "--goal", "tc", "--handicap"]) == 0
    out = capsys.readouterr().out
    assert "winner=Breaker" in out


def test_solve_json(capsys):
    assert run(["solve", "--board", "K:3", "--goal", "clique:3",
                "--format", "json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["winner"] == "Breaker"
    assert blob["best_move"] is None


def test_solve_bias(capsys):
    assert run(["solve", "--board", "K:5", "--goal", "clique:3",
                "--bias", "1:2", "--format", "json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["bias"] == "1:2"


def test_solve_board_file(tmp_path, capsys):
    board = tmp_path / "board.txt"
    board.write_text("3 3\n0 1\n0 2\n1 2\n")
    assert run(["solve", "--board", str(board), "--goal", "clique:3"]) == 0
    assert "Breaker" in capsys.readouterr().out


def test_solve_tournament_goal_file(tmp_path, capsys):
    goal = tmp_path / "tc.txt"
    goal.write_text("0 1\n1 2\n2 0\n")
    assert run(["solve", "--board", "K:4", "--goal",
                f"tournament:{goal}", "--format", "json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["goal"] == "tc"


def test_usage_errors(capsys):
    assert run(["solve", "--board", "nope:9", "--goal", "tc"]) == 2
    assert run(["solve", "--board", "K:4", "--goal", "wat"]) == 2
    assert run(["solve", "--board", "K:4", "--goal", "tc", "--bias", "x"]) == 2
    assert run(["verify", "made-up-check"]) == 2


def test_resource_cap_exit_code(capsys):
    assert run(["solve", "--board", "K:7", "--goal", "tc"]) == 3


def test_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "cache.bin"
    assert run(["solve", "--board", "K5minus", "--goal", "tc",
                "--cache", str(cache), "--format", "json"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert first["cached"] is False and cache.exists()
    assert run(["solve", "--board", "K5minus", "--goal", "tc",
                "--cache", str(cache), "--format", "json"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert second["cached"] is True
    assert second["winner"] == first["winner"]


def test_catalog_formats(capsys):
    assert run(["catalog", "K:3"]) == 0
    assert capsys.readouterr().out == "3 3\n0 1\n0 2\n1 2\n"
    assert run(["catalog", "W:4", "--format", "graph6"]) == 0
    assert capsys.readouterr().out.strip()


def test_enumerate_collections_cli(tmp_path, capsys):
    out = tmp_path / "atlas.jsonl"
    assert run(["enumerate-collections", "--min-v", "5", "--max-v", "5",
                "--edge-formula", "2v-1", "--min-degree", "3",
                "--max-density", "15/8", "--basic", "exclude",
                "--out", str(out), "--format", "json"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["classes"] == 1
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 1 and records[0]["vertices"] == 5


def test_verify_single_check(capsys):
    assert run(["verify", "k4-handicap"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "k4-handicap" in out


def test_verify_json_ledger(tmp_path, capsys):
    assert run(["verify", "min-density-k3", "--out", str(tmp_path),
                "--format", "json"]) == 0
    ledger = json.loads(capsys.readouterr().out)
    assert ledger[0]["status"] == "PASS"
    saved = json.loads((tmp_path / "ledger.json").read_text())
    assert saved[0]["name"] == "min-density-k3"


def test_simulate_curve_and_threads(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"goal": "clique:3", "n": 5,
                                "p_grid": [0.3, 0.8]}))
    out1 = tmp_path / "r1.json"
    assert run(["simulate", "curve", "--spec", str(spec), "--seed", "11",
                "--trials", "6", "--out", str(out1)]) == 0
    capsys.readouterr()
    out2 = tmp_path / "r2.json"
    assert run(["simulate", "curve", "--spec", str(spec), "--seed", "11",
                "--trials", "6", "--threads", "2", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_text() == out2.read_text()


def test_simulate_pittel(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n": 6, "k": 3, "M": 6}))
    assert run(["simulate", "pittel", "--spec", str(spec), "--seed", "3",
                "--trials", "200"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["kind"] == "pittel"


def test_simulate_subgraph_with_csv(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"pattern": "K:3", "n": 12,
                                "p_grid": [0.05, 0.6]}))
    out = tmp_path / "rep.json"
    csv_out = tmp_path / "rep.csv"
    assert run(["simulate", "subgraph", "--spec", str(spec), "--seed", "2",
                "--trials", "5", "--out", str(out), "--csv", str(csv_out)]) == 0
    assert csv_out.read_text().splitlines()[0].startswith("p,")


def test_simulate_random_maker(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n": 9, "k": 3, "M": 20, "b": 1}))
    assert run(["simulate", "random-maker", "--spec", str(spec), "--seed", "4",
                "--trials", "3"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["kind"] == "random-maker"


def test_json_error_on_stderr(capsys):
    rc = run(["solve", "--board", "bad:1", "--goal", "tc", "--format", "json"])
    assert rc == 2
    err = capsys.readouterr().err
    blob = json.loads(err)
    assert blob["error"] == "usage"


def test_cache_version_stamp_rejected(tmp_path, capsys):
    import pickle
    bad = tmp_path / "cache.bin"
    with open(bad, "wb") as fh:
        pickle.dump({"magic": "other", "records": {}}, fh)
    rc = run(["solve", "--board", "K:3", "--goal", "clique:3",
              "--cache", str(bad)])
    assert rc == 2


def test_simulate_bias_curve(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"goal": "clique:3", "n": 5,
                                "b_grid": [1, 2]}))
    assert run(["simulate", "curve", "--spec", str(spec), "--seed", "1",
                "--trials", "1"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["kind"] == "bias-curve"
    assert [c["winner"] for c in blob["cells"]] == ["Maker", "Breaker"]
