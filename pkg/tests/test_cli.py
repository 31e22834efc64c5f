import json
import subprocess
import sys

import pytest

from moufang.catalog import builtin, read_table
from moufang.cli import main
from moufang.isomorphism import is_isomorphic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_list_and_emit(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "d8" in out.split()
    path = tmp_path / "d8.tbl"
    assert run(capsys, "catalog", "emit", "d8", "-o", str(path))[0] == 0
    assert read_table(path) == builtin("d8")


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", "q8")[1] == "valid loop of order 8\n"
    bad = tmp_path / "bad.tbl"
    bad.write_text("2\n0 1\n1 1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "NotLatin" in err


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "o16")
    assert code == 0
    assert "moufang yes" in out and "associative no" in out and "nucleus 2" in out


def test_construct_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "cyclic", "d8", "--enumerate")
    assert code == 0 and out.startswith("# 3 cyclic")
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    first = "\n".join(lines[:4]) + "\n"
    pfile = tmp_path / "p.txt"
    pfile.write_text(first)
    outfile = tmp_path / "out.tbl"
    assert run(capsys, "construct", "cyclic", "d8", "--params", str(pfile), "-o", str(outfile))[0] == 0
    assert read_table(outfile).is_moufang
    code, _, err = run(capsys, "construct", "dihedral", "d8", "--params", str(pfile))
    assert code == 1 and "InvalidParams" in err


def test_doubles_and_iso(capsys, tmp_path):
    a, b = tmp_path / "a.tbl", tmp_path / "b.tbl"
    assert run(capsys, "mg2", "q8", "-o", str(a))[0] == 0
    assert run(capsys, "mgth", "d8", "--h", "2", "-o", str(b))[0] == 0
    assert run(capsys, "iso", str(a), "mg2:q8")[1].startswith("isomorphic:")
    assert run(capsys, "iso", str(a), str(b))[1] == "not isomorphic\n"
    code, _, err = run(capsys, "mgth", "d8", "--h", "1")
    assert code == 1 and "InvalidData" in err


def test_codeloop(capsys, tmp_path):
    code, out, _ = run(capsys, "codeloop", "analyze", "o16")
    assert code == 0 and "code_loop yes" in out and "cdeg 3" in out and "radical_dim 0" in out
    P, R = tmp_path / "p.pm", tmp_path / "r.pm"
    P.write_text("3\n01111111\n")
    R.write_text("3\n01101110\n")  # differs by x0 x1
    code, out, _ = run(capsys, "codeloop", "path", str(P), str(R))
    assert code == 0 and "final power map matches" in out
    built = tmp_path / "c.tbl"
    assert run(capsys, "codeloop", "build", str(P), "-o", str(built))[0] == 0
    assert is_isomorphic(read_table(built), builtin("o16")) is not None
    assert run(capsys, "codeloop", "analyze", "mg2:g16_gamma2c1")[1].startswith("code_loop no")


def test_verify_extensions(capsys):
    code, out, _ = run(capsys, "verify", "extensions", "mg2:d8")
    assert code == 0 and out.rstrip().endswith("0 failure(s)")


def test_closure(capsys, tmp_path):
    dot, rep = tmp_path / "g.dot", tmp_path / "g.json"
    code, out, _ = run(capsys, "closure", "--seeds", "mg2:d8", "--dot", str(dot), "--report", str(rep))
    assert code == 0 and out.startswith("5 classes, 1 component")
    assert dot.read_text().startswith("digraph G16")
    assert json.loads(rep.read_text())["classes"] == 5
    code, _, err = run(capsys, "closure", "--seeds", "mg2:d8", "--order", "8")
    assert code == 1


def test_distance(capsys):
    assert run(capsys, "distance", "d8", "d8")[1] == "0 of 64 cells differ\n"
    code, _, err = run(capsys, "distance", "d8", "c4")
    assert code == 1 and "OrderMismatch" in err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["construct", "cyclic", "d8"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_unknown_name(capsys):
    code, _, err = run(capsys, "validate", "nonesuch")
    assert code == 1 and "UnknownName" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "moufang", "validate", "d8"], capture_output=True, text=True)
    assert r.returncode == 0 and "order 8" in r.stdout
