import json
import subprocess
import sys

import pytest

from kappa3.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_kappa_k4(capsys):
    code, out, _ = call(capsys, "kappa", "--g6", "C~", "--set", "0,1,2")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "2" and len(lines) == 3


def test_kappa_edges_and_all_triples(capsys):
    code, out, _ = call(capsys, "kappa", "--edges", "0-1,1-2,2-0", "--all-triples", "--json")
    data = json.loads(out)
    assert code == 0 and data["max"] == 1 and len(data["sets"]) == 1


def test_kappa_bad_graph6(capsys):
    code, out, err = call(capsys, "kappa", "--g6", "C~~", "--set", "0,1,2")
    assert code == 2 and out == ""
    assert err.startswith("error: ") and len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["kappa", "--g6", "C~"],
        ["kappa", "--g6", "C~", "--edges", "0-1", "--set", "0,1"],
        ["kappa", "--g6", "C~", "--set", "0,1,2,3"],
        ["kappa", "--g6", "C~", "--set", "0,x"],
        ["kappa", "--edges", "0-0", "--set", "0,1"],
        ["enumerate", "--n", "4", "--m", "9"],
        ["family", "regular", "--n", "5", "--d", "3"],
        ["family", "remark", "--n", "7"],
        ["verify", "theorem", "--n", "2"],
        ["catalog", "--n", "11"],
        ["enumerate", "--n", "4", "--threads", "0"],
        ["nosuch"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_file_input_reports_bad_lines(tmp_path, capsys):
    src = tmp_path / "in.g6"
    src.write_text("Bw\nzz!\nC~\n")
    code, out, err = call(capsys, "kappa", "--file", str(src), "--set", "0,1,2", "--json")
    assert code == 2
    assert [row["value"] for row in json.loads(out)] == [1, 2]
    assert f"{src}:2:" in err


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", "--n", "5", "--m", "7", "--connected")
    assert code == 0 and len(out.splitlines()) == 4


def test_family_remark(capsys):
    code, out, _ = call(capsys, "family", "remark", "--n", "7", "--ell", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["edges"] == 13 and data["n"] == 7


def test_verify_theorem_five(capsys):
    code, out, _ = call(capsys, "verify", "theorem", "--n", "5")
    assert code == 0
    assert out.splitlines()[0].startswith("theorem-n5 pass f=7")


def test_verify_failure_exit(capsys, monkeypatch):
    from kappa3 import harness

    monkeypatch.setattr(harness, "extremal_size", lambda n: -1)
    code, out, _ = call(capsys, "verify", "theorem", "--n", "4")
    assert code == 1 and "fail" in out


def test_catalog_and_cache(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "k3.tsv"
    code, out, _ = call(capsys, "catalog", "--n", "5", "--cache", str(cache), "--out", str(tmp_path / "c.json"))
    assert code == 0 and out.splitlines()[0] == "f=7"
    assert json.loads((tmp_path / "c.json").read_text())["f_value"] == 7
    monkeypatch.setenv("KAPPA3_CACHE", str(cache))
    code, out, _ = call(capsys, "cache", "info", "--json")
    assert code == 0 and json.loads(out)["entries"] > 0
    code, _, _ = call(capsys, "cache", "check")
    assert code == 0


def test_cache_needs_path(capsys, monkeypatch):
    monkeypatch.delenv("KAPPA3_CACHE", raising=False)
    code, _, err = call(capsys, "cache", "info")
    assert code == 2 and "KAPPA3_CACHE" in err


JSON_COMMANDS = [
    ["kappa", "--g6", "C~", "--set", "0,1,2"],
    ["enumerate", "--n", "4"],
    ["family", "wheel", "--n", "5"],
    ["family", "attach"],
    ["catalog", "--n", "4"],
    ["verify", "lemma4"],
    ["verify", "remark", "--n", "7"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS)
def test_json_and_byte_identical(capsys, argv):
    code1, out1, _ = call(capsys, *argv, "--json")
    code2, out2, _ = call(capsys, *argv, "--json")
    assert code1 == code2 == 0
    assert out1 == out2
    json.loads(out1)
    _, plain1, _ = call(capsys, *argv)
    _, plain2, _ = call(capsys, *argv)
    assert plain1 == plain2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kappa3.cli", "family", "complete", "--n", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "Bw\n"
