from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from vknot.cli import main
from vknot.families import k_family


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_invariants_text():
    code, out, _ = run("invariants", "O1+ O2+ U1+ U2+")
    assert code == 0
    assert "W0 = t - 2 + t^-1" in out
    assert "check second_mod_four = true" in out
    assert "closure W = t - 2 + t^-1" in out


def test_invariants_empty_json():
    code, out, _ = run("invariants", "", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "vknot.report/1"
    assert set(doc["polynomials"].values()) == {"0"}
    assert set(doc["closure"].values()) == {"0"}
    assert all(doc["derivative_checks"].values())


def test_invariants_latex():
    code, out, _ = run("invariants", "--latex", k_family(2).to_code())
    assert code == 0
    assert r"F_{00}(K;t) &= -t+2-t^{-1}" in out
    assert r"H_{00}(K;t) &= t^{2}-3t+4-3t^{-1}+t^{-2}" in out


def test_invariants_parse_error():
    code, _, err = run("invariants", "O1+ Q2+")
    assert code == 2 and "offset 4" in err


def test_invariants_file(tmp_path):
    f = tmp_path / "codes.txt"
    f.write_text("# two codes\nO1+ U1+\n\nO1+ O2+ U1+ U2+  # genus one\n")
    code, out, _ = run("invariants", "--file", str(f), "--format", "json")
    docs = json.loads(out)
    assert code == 0 and [d["genus"] for d in docs] == [0, 1]
    f.write_text("O1+ U1+\nO1+ U2+\n")
    code, _, err = run("invariants", "--file", str(f))
    assert code == 2 and "line 2" in err
    code, _, err = run("invariants", "--file", str(tmp_path / "missing.txt"))
    assert code == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("invariants")[0] == 2
    assert run("verify", "bogus")[0] == 2
    assert run("verify", "moves", "--trials", "-1")[0] == 2
    assert run("family", "K", "1")[0] == 2
    assert run("family", "L", "3")[0] == 2


def test_family_kprime2():
    code, out, _ = run("family", "Kprime", "2")
    assert code == 0
    assert "closed forms: all match" in out
    assert "A\t3\t2\t1" in out
    assert "H11 = -4*t + 8 - 4*t^-1" in out


def test_family_k5_json():
    code, out, _ = run("family", "K", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["mismatches"] == {}
    assert doc["polynomials"]["W0"] == "t^5 - 5*t + 4"


def test_family_mismatch_flagged(monkeypatch):
    from vknot import families
    real = families.k_closed_forms

    def wrong(n):
        forms = dict(real(n))
        forms["W0"] = forms["W0"] + 1
        return forms

    monkeypatch.setattr(families, "k_closed_forms", wrong)
    code, out, _ = run("family", "K", "3")
    assert code == 1 and "MISMATCH" in out


def test_verify_pass_and_determinism():
    a = run("verify", "closure", "--trials", "10", "--seed", "1", "--format", "json")
    b = run("verify", "closure", "--trials", "10", "--seed", "1", "--format", "json")
    assert a[0] == 0 and a[1] == b[1]
    doc = json.loads(a[1])
    assert doc["passed"] and doc["seed"] == 1 and doc["trials"] == 10


def test_verify_finite_type_prints_witnesses():
    code, out, _ = run("verify", "finite-type", "--trials", "3", "--seed", "3")
    assert code == 0 and "witnesses" in out and "finite-type: PASS" in out


def test_verify_failure_exit_code(monkeypatch):
    from vknot import verify
    from vknot.invariants import ClosedInvariants
    from vknot.laurent import T

    real = verify.closed_invariants
    monkeypatch.setattr(verify, "closed_invariants",
                        lambda D: ClosedInvariants(real(D).W + T - 1, real(D).I, real(D).II))
    code, out, _ = run("verify", "closure", "--trials", "2", "--seed", "0")
    assert code == 1
    assert "closure: FAIL" in out and "certificate:" in out
    cert = json.loads(out.split("certificate:\n", 1)[1])
    assert list(cert["expected"]) == ["W"]


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "vknot.cli", "family", "K", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "W0 = t^2 - 2*t + 1" in proc.stdout
