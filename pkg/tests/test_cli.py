import json
import subprocess
import sys
from fractions import Fraction

import pytest

from relaxkm import cli, suites


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_listing(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A1^1", "--height", "3")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 5


def test_roots_rejects_finite_type(capsys):
    code, _, err = run(capsys, "roots", "--type", "A2", "--height", "3")
    assert code == 2 and "error" in err


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--type", "A2^1", "--height", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and isinstance(doc, list) and len(doc) == 6


def test_roots_without_multiplicities_exits_one(capsys, tmp_path):
    p = tmp_path / "d4.json"
    p.write_text(json.dumps({"matrix": [[2, 0, -1, 0, 0], [0, 2, -1, 0, 0], [-1, -1, 2, -1, -1],
                                        [0, 0, -1, 2, 0], [0, 0, -1, 0, 2]]}))
    code, _, _ = run(capsys, "roots", "--gcm", str(p), "--height", "8")
    assert code == 1


def test_strata_formats(capsys):
    code, out, _ = run(capsys, "strata", "--max-dim", "0", "--format", "dot")
    assert code == 0 and out.count("label=") == 2
    code, out, _ = run(capsys, "strata", "--max-dim", "2", "--format", "json")
    doc = json.loads(out)
    assert [n["dim"] for n in doc["nodes"]].count(1) == 3


def test_dot_is_only_for_strata(capsys):
    code, _, _ = run(capsys, "roots", "--format", "dot")
    assert code == 2


def test_weyl_listing(capsys):
    code, out, _ = run(capsys, "weyl", "--max-length", "3", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 7


def test_module_character_rows(capsys):
    code, out, _ = run(capsys, "module", "--lam=-2rho", "--alpha", "1/2", "--depth", "2")
    assert code == 0
    rows = {line.split("\t")[0]: line.split("\t")[1:] for line in out.splitlines()[1:]}
    assert set(rows["-1"]) == {"3"}
    assert set(rows["0"]) == {"1"}


def test_module_loop_relations(capsys):
    code, out, _ = run(capsys, "module", "--lam=-2rho", "--alpha", "1/2", "--depth", "2",
                       "--verify-loop-relations")
    assert code == 0
    assert "PASS: (sl2 (x) tC[t]) v = 0" in out
    assert "mu=1/4" in out


def test_module_gprime_probe(capsys):
    code, out, _ = run(capsys, "module", "--lam=-2rho", "--family", "eq", "--depth", "2", "--probe-gprime", "6")
    assert code == 0 and "reported 7" in out


def test_module_json(capsys):
    code, out, _ = run(capsys, "module", "--lam=-2rho", "--family", "verma", "--depth", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["module"]["kind"] == "verma"


def test_alpha_and_family_are_exclusive(capsys):
    code, _, err = run(capsys, "module", "--alpha", "1/2", "--family", "eq")
    assert code == 2 and "mutually exclusive" in err


def test_bad_arguments_exit_two(capsys):
    assert run(capsys, "module", "--lam=banana")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2
    assert run(capsys, "module", "--window", "3", "-3")[0] == 2


def _h1_column(out):
    lines = out.splitlines()
    k = lines.index("n_twist\tH1_nonzero\trelations")
    return {int(l.split("\t")[0]): l.split("\t")[1] == "1" for l in lines[k + 1:]}


def test_p1_family_m(capsys):
    code, out, _ = run(capsys, "p1", "--n-twist", "-2", "4", "--family", "M")
    assert code == 0
    assert _h1_column(out) == {nt: nt <= 0 for nt in range(-2, 5)}


def test_p1_star_has_no_h1(capsys):
    code, out, _ = run(capsys, "p1", "--n-twist", "-2", "4", "--family", "R_star")
    assert code == 0 and not any(_h1_column(out).values())


def test_p1_alpha_shift(capsys):
    _, a, _ = run(capsys, "p1", "--family", "R_star", "--alpha", "1/3", "--format", "json")
    _, b, _ = run(capsys, "p1", "--family", "R_star", "--alpha", "4/3", "--format", "json")
    ta = [r["table"] for r in json.loads(a)]
    tb = [r["table"] for r in json.loads(b)]
    assert ta == tb


def test_verify_weyl(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "weyl", "--max-length", "8")
    assert code == 0 and out.strip().endswith("checks")


def test_verify_algebra_includes_delta_four(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--depth", "12")
    assert code == 0
    assert "delta bound d=4" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["failures"] == 0
    assert {r["suite"] for r in doc["checks"]} == set(suites.SUITES)


def test_verify_failure_exits_one(capsys, monkeypatch):
    def broken(**_):
        yield "always fails", False, "counterexample here"

    monkeypatch.setitem(suites.SUITES, "cartan", broken)
    code, out, _ = run(capsys, "verify", "--suite", "cartan")
    assert code == 1 and "counterexample here" in out


def test_config_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"depth": 1, "window": [-1, 1]}))
    monkeypatch.setenv("KMR_DEPTH", "3")
    # config beats the environment
    _, out, _ = run(capsys, "module", "--lam=-2rho", "--alpha", "1/2", "--config", str(cfg))
    assert len(out.splitlines()) == 1 + 2
    # flags beat the config
    _, out, _ = run(capsys, "module", "--lam=-2rho", "--alpha", "1/2", "--config", str(cfg), "--depth", "2")
    assert len(out.splitlines()) == 1 + 3
    # the environment beats the defaults
    _, out, _ = run(capsys, "module", "--lam=-2rho", "--alpha", "1/2", "--window", "-1", "1")
    assert len(out.splitlines()) == 1 + 4


def test_bad_config(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "roots", "--config", str(cfg))[0] == 2
    monkeypatch.setenv("KMR_DEPTH", "deep")
    assert run(capsys, "roots")[0] == 2


def test_parse_lam():
    from relaxkm.cartan import cartan_type_a

    g = cartan_type_a(2)
    assert cli.parse_lam(g, "-2rho") == g.rho.scale(-2)
    assert cli.parse_lam(g, "rho") == g.rho
    assert cli.parse_lam(g, "-1/2*rho") == g.rho.scale(Fraction(-1, 2))
    assert cli.parse_lam(g, "-4,1;d=2") == g.weight([-4, 1], 2)


def test_console_script_runs():
    res = subprocess.run([sys.executable, "-m", "relaxkm.cli", "roots", "--height", "2"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and len(res.stdout.splitlines()) == 4
