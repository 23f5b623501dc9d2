import io
import json
import subprocess
import sys

import pytest

from factorium.cli import main
from factorium.graph import emit_dimacs, petersen_graph


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


GOLDEN = [
    (["factor", "--k", "2", "Cl"], None, 0),
    (["factor", "--k", "1", "Cs"], None, 1),
    (["certificate", "--k", "1"], "Cs\n", 0),
    (["certificate", "--k", "2", "Cl"], None, 1),
    (["certificate", "--k", "1", "--extremal", "Cs"], None, 0),
    (["ore-check", "--k", "1", "Cl"], None, 0),
    (["ore-check", "--k", "1", "IheA@GUAo"], None, 1),
    (["decompose", "C~"], None, 0),
    (["decompose", "IheA@GUAo"], None, 1),
    (["decompose", "--k", "2", "C~"], None, 0),
    (["disjoint-pms", "--k", "3", "C~"], None, 0),
    (["disjoint-pms", "--k", "2", "IheA@GUAo"], None, 1),
    (["search-win", "--n", "6", "--k", "2"], None, 0),
    (["search-kfactor", "--n", "6", "--k", "3"], None, 0),
    (["ledger", "--k-max", "20", "--qp-k-max", "10", "--m-range", "100"], None, 0),
    (["enumerate", "--n", "4"], None, 0),
    # usage and input errors
    (["factor", "--k", "2", "C"], None, 2),
    (["factor", "--k", "0", "Cl"], None, 2),
    (["factor", "Cl"], None, 2),
    (["nonsense"], None, 2),
    (["search-win", "--n", "5", "--k", "1"], None, 2),
    (["decompose", "Dhc"], None, 2),  # C5: odd order
    (["disjoint-pms", "--k", "1", "Dhc"], None, 2),
    (["enumerate", "--n", "11"], None, 2),
    (["factor", "--k", "1"], "", 2),
    (["factor", "--k", "1", "--file", "/nonexistent/graphs.g6"], None, 2),
]


@pytest.mark.parametrize("argv, stdin, expected", GOLDEN)
def test_exit_codes(capsys, monkeypatch, argv, stdin, expected):
    code, _, err = run(capsys, monkeypatch, argv, stdin)
    assert code == expected
    if expected == 2:
        assert err


def test_error_is_one_line(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, ["factor", "--k", "2", "C"])
    assert code == 2 and out == ""
    assert err.startswith("factorium: error:") and err.count("\n") == 1


def test_factor_text(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["factor", "--k", "2", "Cl"])
    assert code == 0
    assert out == "k=2 factor: (0,1)(0,3)(1,2)(2,3)\n"


def test_certificate_text(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["certificate", "--k", "1"], stdin="Cs\n")
    assert code == 0
    assert "S: 0" in out and "eta: -2" in out and "odd: {1} {2} {3}" in out


def test_search_text(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["search-win", "--n", "6", "--k", "2"])
    assert code == 0
    assert "failures=0" in out.splitlines()[0]


@pytest.mark.parametrize(
    "argv",
    [
        ["factor", "--k", "2", "Cl"],
        ["factor", "--k", "1", "Cs"],
        ["certificate", "--k", "1", "Cs"],
        ["certificate", "--k", "1", "--extremal", "Cs"],
        ["ore-check", "--k", "1", "Cl"],
        ["decompose", "C~"],
        ["disjoint-pms", "--k", "2", "IheA@GUAo"],
        ["search-kfactor", "--n", "4", "--k", "2"],
        ["ledger", "--k-max", "5", "--qp-k-max", "5", "--m-range", "10"],
        ["enumerate", "--n", "3"],
    ],
)
def test_json_is_single_object_and_agrees_with_exit_code(capsys, monkeypatch, argv):
    code, out, _ = run(capsys, monkeypatch, argv + ["--json"])
    lines = out.strip().splitlines()
    assert len(lines) == 1
    obj = json.loads(lines[0])
    assert set(obj) == {"command", "params", "result", "witness", "elapsed_ms"}
    assert obj["command"] == argv[0]
    text_code, text_out, _ = run(capsys, monkeypatch, argv)
    assert text_code == code
    result = obj["result"]
    if isinstance(result, bool):
        assert result == (code == 0)
        assert (text_out.strip() == "none") == (not result)


def test_json_certificate_witness(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["certificate", "--k", "1", "Cs", "--json"])
    obj = json.loads(out)
    assert obj["witness"]["S"] == [0] and obj["witness"]["eta"] == -2
    assert obj["params"] == {"graph": "Cs", "k": 1}


def test_multi_line_stdin_worst_code(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["factor", "--k", "1"], stdin="C~\nCs\n")
    assert code == 1
    lines = out.splitlines()
    assert lines[0].startswith("k=1 factor:") and lines[1] == "none"


def test_dimacs_file(tmp_path, capsys, monkeypatch):
    path = tmp_path / "petersen.col"
    path.write_text("c Petersen\n" + emit_dimacs(petersen_graph()), encoding="utf-8")
    code, out, _ = run(capsys, monkeypatch, ["factor", "--k", "3", "--file", str(path), "--json"])
    assert code == 0
    assert json.loads(out)["params"]["graph"] == "IheA@GUAo"


def test_graph6_file(tmp_path, capsys, monkeypatch):
    path = tmp_path / "g.g6"
    path.write_text("Cl\nC~\n", encoding="utf-8")
    code, out, _ = run(capsys, monkeypatch, ["factor", "--k", "2", "--file", str(path)])
    assert code == 0 and len(out.splitlines()) == 2


def test_enumerate_sorted_and_jobs_independent(capsys, monkeypatch):
    _, one, _ = run(capsys, monkeypatch, ["enumerate", "--n", "5", "--jobs", "1"])
    _, two, _ = run(capsys, monkeypatch, ["enumerate", "--n", "5", "--jobs", "2"])
    lines = one.splitlines()
    assert len(lines) == 34 and lines == sorted(lines)
    assert one == two


def test_enumerate_regular(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "--n", "6", "--regular", "3"])
    assert code == 0 and len(out.splitlines()) == 2


def test_ledger_lines(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["ledger", "--k-max", "10", "--qp-k-max", "10", "--m-range", "10"])
    lines = out.splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS ") for line in lines)


def test_jobs_env_default(capsys, monkeypatch):
    monkeypatch.setenv("FACTORIUM_JOBS", "2")
    code, out, _ = run(capsys, monkeypatch, ["search-win", "--n", "4", "--k", "1"])
    assert code == 0 and out.startswith("n=4 k=1 scanned=11 ore=4 failures=0")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "factorium", "factor", "--k", "2", "Cl"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("k=2 factor:")
