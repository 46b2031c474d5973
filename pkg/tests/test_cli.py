import json
import subprocess
import sys
from fractions import Fraction

import pytest

from tuttewidth import cli
from tuttewidth.graph import Multigraph, path_decomposition
from tuttewidth.io import format_gr, format_td, read_gr, read_td

K3 = Multigraph(3, ((0, 1), (1, 2), (0, 2)))
K4 = Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (("k3", K3), ("k4", K4), ("edge", Multigraph(2, ((0, 1),))), ("loop", Multigraph(1, ((0, 0),))),
                    ("big", Multigraph(2, ((0, 1),) * 21))):
        path = tmp_path / f"{name}.gr"
        path.write_text(format_gr(g))
        out[name] = str(path)
    return out


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fields(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


def test_eval_examples(files, capsys):
    code, out, _ = run(capsys, "eval", files["k4"], "--point", 2, 1, "--algorithm", "forest")
    assert code == 0 and fields(out)["value"] == "38"
    code, out, _ = run(capsys, "eval", files["k3"], "--point", 2, 2)
    assert code == 0 and fields(out)["value"] == "8"
    code, out, _ = run(capsys, "eval", files["k3"], "--point", 3, 2, "--algorithm", "ising", "--verify")
    rep = fields(out)
    assert code == 0 and rep["value"] == "14" and rep["verified"] == "oracle"


def test_eval_rationals(files, capsys):
    code, out, _ = run(capsys, "eval", files["k3"], "--point", "1/2", "-3", "--verify")
    assert code == 0 and fields(out)["value"] == str(Fraction(1, 4) + Fraction(1, 2) - 3).replace(" ", "")
    for algo in ("general", "oracle", "coloring"):
        code, out, _ = run(capsys, "eval", files["k3"], "--point", -2, 0, "--algorithm", algo)
        assert code == 0 and fields(out)["value"] == "2"


def test_coeffs_examples(files, capsys):
    for name, want in (("k3", "x^2 + x + y"), ("edge", "x"), ("loop", "y")):
        code, out, _ = run(capsys, "coeffs", files[name], "--verify")
        assert code == 0 and fields(out)["polynomial"] == want


def test_json_report(files, capsys):
    code, out, _ = run(capsys, "coeffs", files["k3"], "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["coefficients"] == [[0, 1, "1"], [1, 0, "1"], [2, 0, "1"]]
    code, out, _ = run(capsys, "eval", files["k3"], "--point", "1/3", 2, "--json")
    rep = json.loads(out)
    assert rep["value"] == "22/9" and rep["point"] == ["1/3", "2"]


def test_transform_examples(files, tmp_path, capsys):
    out_gr, out_td = tmp_path / "c6.gr", tmp_path / "c6.td"
    code, out, _ = run(capsys, "transform", files["k3"], "--op", "stretch", "--k", 2, "--out", out_gr, "--td-out", out_td)
    rep = fields(out)
    assert code == 0 and rep["edges"] == "3 -> 6" and rep["vertices"] == "3 -> 6"
    assert rep["widths"] == "treewidth 2 -> 2"
    c6 = read_gr(out_gr)
    assert (c6.n, c6.m) == (6, 6)
    assert read_td(out_td).width == 2

    code, out, _ = run(capsys, "transform", files["k4"], "--op", "thicken", "--k", 3, "--out", tmp_path / "t.gr")
    assert code == 0 and fields(out)["edges"] == "6 -> 18"

    code, out, _ = run(capsys, "transform", files["edge"], "--op", "insulated", "--k", 4, "--out", tmp_path / "i.gr")
    assert code == 0 and read_gr(tmp_path / "i.gr").m == 6


def test_transform_all_decompositions(files, tmp_path, capsys):
    pd = tmp_path / "k3.pd"
    pd.write_text(format_td(path_decomposition([[0, 1, 2]]), 3))
    cut = tmp_path / "k3.cut"
    cut.write_text("1 2 3\n")
    code, out, _ = run(capsys, "transform", files["k3"], "--pd", pd, "--cut", cut, "--op", "insulated", "--k", 3,
                       "--out", tmp_path / "o.gr", "--pd-out", tmp_path / "o.pd", "--cut-out", tmp_path / "o.cut")
    rep = fields(out)
    assert code == 0
    assert "pathwidth 2 -> 4" in rep["widths"] and "cutwidth 2 -> 4" in rep["widths"]


def test_rank_examples(capsys):
    for n, bell, cat in ((4, 15, 14), (2, 2, 2), (5, 52, 42)):
        code, out, _ = run(capsys, "rank", "--n", n)
        rep = fields(out)
        assert code == 0
        assert (rep["bell"], rep["catalan"], rep["rank"], rep["basis"]) == (str(bell), str(cat), str(cat), "OK")


def test_parse_errors(files, tmp_path, capsys):
    assert run(capsys, "eval", files["k3"], "--point", "0.5", 2)[0] == 2
    assert run(capsys, "eval", files["k3"], "--point", "1/0", 2)[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.gr", "--point", 2, 2)[0] == 2
    bad = tmp_path / "bad.gr"
    bad.write_text("p tw 2 1\n1 5\n")
    assert run(capsys, "eval", bad, "--point", 2, 2)[0] == 2
    td = tmp_path / "bad.td"
    td.write_text(format_td(path_decomposition([[0, 1], [1, 2]]), 3))
    code, _, err = run(capsys, "eval", files["k3"], "--td", td, "--point", 2, 2)
    assert code == 2 and "edge-coverage" in err


def test_inapplicable(files, capsys):
    assert run(capsys, "eval", files["k3"], "--point", 2, 2, "--algorithm", "forest")[0] == 3
    assert run(capsys, "eval", files["k3"], "--point", 2, 2, "--algorithm", "ising")[0] == 3
    assert run(capsys, "transform", files["k3"], "--op", "stretch", "--k", 0, "--out", "unused.gr")[0] == 3


def test_verify_mismatch(files, capsys, monkeypatch):
    monkeypatch.setattr(cli, "brute_tutte", lambda g, x, y: Fraction(-1))
    code, _, err = run(capsys, "eval", files["k3"], "--point", 2, 2, "--verify")
    assert code == 4 and "oracle" in err


def test_guards(files, capsys):
    assert run(capsys, "eval", files["big"], "--point", 2, 2, "--verify")[0] == 5
    assert run(capsys, "rank", "--n", 7)[0] == 5


def test_deterministic_modulo_time(files, capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "coeffs", files["k4"], "--json")
        rep = json.loads(out)
        rep.pop("wall_time")
        outs.append(json.dumps(rep))
    assert outs[0] == outs[1]


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "tuttewidth", "eval", files["k4"], "--point", "2", "1"],
                         capture_output=True, text=True, check=True)
    assert "value: 38" in res.stdout
