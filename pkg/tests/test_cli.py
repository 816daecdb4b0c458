import csv
import io
import json

import pytest

from bichromatic import generators
from bichromatic.cli import main
from bichromatic.formats import ParseError, instance_from_json, instance_to_json

from conftest import DEMO


@pytest.fixture
def demo_file(tmp_path):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps({"pairs": [list(map(list, p)) for p in DEMO]}))
    return path


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("mode, extra", [("oracle", []), ("exact", [])])
def test_solve_demo(capsys, demo_file, mode, extra):
    code, out = _run(capsys, "solve", demo_file, "--mode", mode, *extra)
    assert code == 0
    rec = json.loads(out.out)
    assert rec["radius"] == pytest.approx(0.5, rel=1e-9)
    assert rec["verified"] is True
    assert len(rec["centers"]) == 2 and len(rec["coloring"]) == 2


def test_solve_approx_with_svg(capsys, demo_file, tmp_path):
    svg = tmp_path / "out.svg"
    code, out = _run(capsys, "solve", demo_file, "--mode", "approx", "--eps", "0.2", "--svg", svg)
    assert code == 0
    assert 0.5 - 1e-9 <= json.loads(out.out)["radius"] <= 0.6
    text = svg.read_text()
    assert text.startswith("<svg") and text.count("<line") == 2


def test_solve_writes_out_file(capsys, demo_file, tmp_path):
    dest = tmp_path / "rec.json"
    code, out = _run(capsys, "solve", demo_file, "--out", dest)
    assert code == 0 and out.out == ""
    assert json.loads(dest.read_text())["verified"] is True


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = _run(capsys, "solve", bad)
    assert code == 2


def test_bad_eps_exit_code(capsys, demo_file):
    code, _ = _run(capsys, "solve", demo_file, "--mode", "approx", "--eps", "3")
    assert code == 2
    code, _ = _run(capsys, "solve", demo_file, "--mode", "approx")
    assert code == 2


def test_budget_exit_code(capsys, tmp_path):
    path = tmp_path / "big.json"
    path.write_text(instance_to_json(generators.uniform(6, seed=1)))
    code, _ = _run(capsys, "solve", path, "--mode", "oracle", "--budget", "5")
    assert code == 3


def test_ib2c_mode(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"U": 3, "pairs": [[[1, 1], [3, 3]], [[1, 3], [3, 1]]]}))
    code, out = _run(capsys, "solve", path, "--mode", "ib2c")
    assert code == 0
    assert json.loads(out.out)["radius"] == 1.0


def test_gen_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for dest in (a, b):
        assert _run(capsys, "gen", "uniform", "-n", 10, "--seed", 1, "--out", dest)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_two_cluster_straddles():
    S = generators.two_cluster(20, seed=3)
    for a, b in S.pairs:
        assert (a.x < 50) != (b.x < 50)


def test_gen_ib2c_grid_range(capsys):
    code, out = _run(capsys, "gen", "ib2c-grid", "-n", 20, "-U", 8, "--seed", 2)
    assert code == 0
    data = json.loads(out.out)
    assert data["U"] == 8 and len(data["pairs"]) == 20
    assert all(1 <= v <= 8 for pair in data["pairs"] for p in pair for v in p)


def test_bench_empty_dir(capsys, tmp_path):
    code, out = _run(capsys, "bench", tmp_path)
    assert code == 0
    assert out.out.strip().splitlines() == ["instance,solver,rep,n,U,eps,radius,time,oracle_delta"]


def test_bench_rows(capsys, tmp_path, demo_file):
    d = tmp_path / "inst"
    d.mkdir()
    (d / "demo.json").write_text(demo_file.read_text())
    code, out = _run(capsys, "bench", d, "--solvers", "exact", "--reps", 3)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert len(rows) == 3
    assert all(abs(float(r["oracle_delta"])) <= 1e-9 for r in rows)


def test_instance_json_round_trip():
    S = generators.nearby_lens(7, seed=5)
    text = instance_to_json(S)
    again = instance_from_json(text)
    assert again == S
    assert instance_to_json(again) == text


def test_instance_json_errors():
    for text in ("[]", '{"pairs": [[1, 2]]}', '{"pairs": []}'):
        with pytest.raises(ParseError):
            instance_from_json(text)
