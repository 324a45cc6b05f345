import json
import subprocess
import sys

import numpy as np
import pytest

from niemeier_aut.cli import run
from niemeier_aut.exactlin import Matrix
from niemeier_aut.lataut import sigma


def _json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def _write_matrix(path, A):
    path.write_text(json.dumps(Matrix.from_rows(np.asarray(A).tolist()).to_json()))
    return str(path)


def test_build_json(capsys):
    assert run(["build", "D4_6", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["det"] == "1" and obj["even"] and obj["rank"] == 24


def test_build_text(capsys):
    assert run(["build", "Leech"]) == 0
    assert "det 1" in capsys.readouterr().out


def test_roots_count(capsys):
    assert run(["roots", "E6_4", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["count"] == 288 and obj["roots"] is None


def test_roots_list(capsys):
    assert run(["roots", "A2_12", "--list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith("72 roots") and len(lines) == 73


def test_invariants_sigma3(capsys):
    assert run(["invariants", "D4_6", "sigma3", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert (obj["order"], obj["fixed_rank"], obj["root_fix"]) == (3, 6, 18)


def test_classify_sigma4(capsys):
    assert run(["classify", "D4_6", "sigma4", "--json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["class_label"] == "D4^6 / rank 6 / non-Weyl / Φ = 3-cycle"
    assert obj["outcome"] == "non_lattice_VOA" and obj["rho"] == "1/1"


def test_matrix_file_roundtrip(tmp_path, capsys):
    path = _write_matrix(tmp_path / "s4.json", sigma(4).array)
    assert run(["invariants", "D4_6", path, "--json"]) == 0
    from_file = json.loads(capsys.readouterr().out)
    assert run(["invariants", "D4_6", "sigma4", "--json"]) == 0
    by_name = json.loads(capsys.readouterr().out)
    from_file.pop("automorphism", None)
    by_name.pop("automorphism", None)
    assert from_file == by_name


def test_non_automorphism_file_fails_check(tmp_path, capsys):
    path = _write_matrix(tmp_path / "twice.json", 2 * np.eye(24, dtype=np.int64))
    assert run(["invariants", "D4_6", path]) == 1
    assert "check failed" in capsys.readouterr().err


def test_malformed_matrix_file_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["invariants", "D4_6", str(bad)]) == 2
    frac = tmp_path / "frac.json"
    frac.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [["1/2"]]}))
    assert run(["invariants", "D4_6", str(frac)]) == 2
    small = _write_matrix(tmp_path / "small.json", np.eye(4, dtype=np.int64))
    assert run(["invariants", "D4_6", small]) == 2


@pytest.mark.parametrize("argv", [
    ["build", "E8_3"],
    ["invariants", "D4_6", "sigma99"],
    ["verify", "nonsense"],
    ["build", "D4_6", "--bogus"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv):
    assert run(argv) == 2


def test_certify(capsys):
    assert run(["certify", "D4_6", "sigma2", "sigma2", "--conjugator", "identity", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["certified"]
    assert run(["certify", "D4_6", "sigma3", "sigma4", "--json"]) == 1
    obj = json.loads(capsys.readouterr().out)
    assert not obj["certified"] and not obj["invariants_agree"]
    assert run(["certify", "D4_6", "sigma3", "sigma4", "--conjugator", "identity"]) == 1


@pytest.mark.parametrize("suite", ["sigma-table", "autd4"])
def test_verify_suite(suite, capsys):
    assert run(["verify", suite, "--json"]) == 0
    records = _json_lines(capsys.readouterr().out)
    assert records and all(r["pass"] and r["suite"] == suite for r in records)


def test_verify_is_deterministic_under_seed(capsys):
    outs = []
    for _ in range(2):
        assert run(["verify", "weyl-criterion", "--json", "--seed", "7"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_cap_is_enforced():
    # a fresh process, so no group closure is served from the cache
    proc = subprocess.run([sys.executable, "-m", "niemeier_aut.cli", "verify", "autd4", "--cap", "10"],
                          capture_output=True, text=True, timeout=300)
    assert proc.returncode == 1
    assert "check failed" in proc.stderr


@pytest.mark.slow
def test_verify_all(capsys):
    assert run(["verify", "all", "--json"]) == 0
    suites = {r["suite"] for r in _json_lines(capsys.readouterr().out)}
    from niemeier_aut.suites import SUITES
    assert suites == set(SUITES)
