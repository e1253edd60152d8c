import json
import subprocess
import sys
from pathlib import Path

import pytest

from lcneck.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_yes_no_error(capsys):
    code, out, _ = run(capsys, "prove", "Lneck", "q * p -> (p * q)^c")
    assert code == 0 and out == "derivable in Lneck: (q * p) -> (p * q)^c\n"
    code, out, _ = run(capsys, "prove", "Lneck", "p^c -> p")
    assert code == 1 and out.startswith("not derivable")
    code, _, err = run(capsys, "prove", "Lneck", "p^c ->")
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "prove", "Lneck", "p^r -> p")
    assert code == 2
    code, _, _ = run(capsys, "prove", "Lfoo", "p -> p")
    assert code == 2


def test_prove_proof_formats(capsys):
    code, out, _ = run(capsys, "prove", "Lneck", "q * p -> (p * q)^c", "--proof")
    assert code == 0
    assert "(NeckRot) [offset 1]" in out and out.count("(Ax)") == 2
    code, out, _ = run(capsys, "prove", "L", "p, p \\ q -> q", "--proof-json")
    assert json.loads(out)["rule"]
    code, out, _ = run(capsys, "prove", "L", "p, p \\ q -> q", "--latex")
    assert "\\infer" in out and "usepackage" not in out
    code, out, _ = run(capsys, "prove", "L", "p, p \\ q -> q", "--latex", "--standalone")
    assert "\\usepackage{proof}" in out


def test_lbrac_with_cut(capsys):
    code, _, _ = run(capsys, "prove", "Lbrac", "r, q, p -> ((p^b * q^b) * r^b)^b", "--cut-budget", "1")
    assert code == 0


def test_grammar_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "grammar", "member", DATA / "abc.gr", "abc")
    assert code == 0 and out.splitlines()[1] == "assignment: ((s / q) / p), p, q"
    code, _, _ = run(capsys, "grammar", "member", DATA / "abc.gr", "acb")
    assert code == 1
    code, out, _ = run(capsys, "grammar", "enum", DATA / "perm_abc.gr", "--max-len", "3")
    assert out.split() == ["abc", "bca", "cab"]
    code, out, _ = run(capsys, "grammar", "perm", DATA / "rl_abc.txt", "--max-len", "3")
    assert len(out.split()) == 6
    code, out, _ = run(capsys, "grammar", "import", DATA / "rl_abc.txt", "--perm")
    assert code == 0 and "system: Lneck" in out
    code, _, err = run(capsys, "grammar", "member", tmp_path / "missing.gr", "a")
    assert code == 2 and "cannot read" in err


def test_transform_commands(capsys):
    cases = {
        ("box", "p"): "((__l \\ ((__l * p) * __r)) / __r)",
        ("unneck", "(p^c * q)^c"): "(p * q)",
        ("calA", "p / q"): "(p / q^c)",
    }
    for (kind, f), want in cases.items():
        code, out, _ = run(capsys, "transform", kind, f)
        assert code == 0 and out.strip() == want, kind
    code, _, err = run(capsys, "transform", "eN", "p^c")
    assert code == 2 and "--N" in err


def test_semantics_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "semantics", "countermodel", "p^c -> p", "--seed", "7")
    assert code == 0
    model = json.loads(out)["interpretation"]["assignment"]["p"]
    path = tmp_path / "p.json"
    path.write_text(json.dumps(model))
    code, out, _ = run(capsys, "semantics", "check", "p^c -> p", "-m", f"p={path}")
    assert code == 1 and out.startswith("fails")
    code, out, _ = run(capsys, "semantics", "check", "p -> p", "-m", f"p={path}")
    assert code == 0
    code, _, err = run(capsys, "semantics", "check", "p -> q", "-m", f"p={path}")
    assert code == 2
    code, _, _ = run(capsys, "semantics", "countermodel", "p -> p", "--samples", "20")
    assert code == 1


def test_hl_commands(capsys):
    code, out, _ = run(capsys, "hl", "prove", DATA / "cycle3.json", "--proof")
    assert code == 0 and out.startswith("derivable") and "[DivR]" in out
    code, _, err = run(capsys, "hl", "prove", DATA / "bad.json")
    assert code == 2 and "distinct" in err
    code, out, _ = run(capsys, "hl", "embed", "p^r -> p^b", "--dot")
    assert code == 0 and "digraph" in out and out.rstrip().endswith("derivable")
    code, out, _ = run(capsys, "hl", "embed", "p^b -> p")
    assert code == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lcneck", "prove", "L", "p -> p"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("derivable")
    res = subprocess.run([sys.executable, "-m", "lcneck"], capture_output=True, text=True)
    assert res.returncode == 2
