"""CLI contract tests: frozen example outputs, exit codes, format and
determinism guarantees."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from tjl.cli import run, main


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_irreps_census_examples(capsys):
    d = invoke_json(capsys, "irreps", "--q", "3", "--n", "2", "--N", "1")
    assert d["irrep_count"] == 7
    assert d["dims"] == [1, 1, 1, 1, 2, 2, 2]
    assert d["square_sum"] == 16 == d["group_order"]
    assert d["class_count"] == 7
    assert d["orthonormal"] is True
    assert d["schema_version"] == "1"

    d = invoke_json(capsys, "irreps", "--q", "2", "--n", "2", "--N", "1")
    assert d["irrep_count"] == 3
    assert d["dims"] == [1, 1, 2]

    d = invoke_json(capsys, "irreps", "--q", "2", "--n", "1", "--N", "1")
    assert d["irrep_count"] == 1
    assert d["dims"] == [1]


def test_irreps_character_table_shape(capsys):
    d = invoke_json(capsys, "irreps", "--q", "2", "--n", "2", "--N", "1")
    table = d["character_table"]
    assert len(table["rows"]) == 3
    assert sorted(table["class_sizes"]) == [1, 2, 3]
    assert len(table["rows"][0]) == 3
    # restriction support equals the defining orbit
    supports = [m["support"] for m in d["restriction_multiplicities"]]
    assert supports == [[0], [0], [1, 2]]


def test_orbits(capsys):
    d = invoke_json(capsys, "orbits", "--q", "3", "--n", "2")
    assert d["orbits"] == [[0], [1, 3], [2, 6], [4], [5, 7]]
    assert d["regular_count"] == 3
    assert d["modulus"] == 8


def test_tame_examples(capsys):
    d = invoke_json(capsys, "tame", "--q", "3", "--n", "2")
    assert len(d["parameters"]) == 3
    assert [p["r_sum"] for p in d["parameters"]] == [2, 2, 2]
    assert d["all_sums_match"] is True

    d = invoke_json(capsys, "tame", "--q", "2", "--n", "3")
    assert len(d["parameters"]) == 2
    assert [p["r_sum"] for p in d["parameters"]] == [3, 3]

    d = invoke_json(capsys, "tame", "--q", "2", "--n", "1")
    assert len(d["parameters"]) == 1
    assert d["parameters"][0]["r_sum"] == 1


def test_brandt_json(capsys):
    d = invoke_json(capsys, "brandt", "--q", "3", "--place", "t+2")
    assert d["coset_count"] == 4
    assert len(d["matrix"]) == 16
    assert all(sum(row) == 4 for row in d["matrix"])
    assert all(v >= 0 for row in d["matrix"] for v in row)


def test_brandt_tsv(capsys):
    code, out, err = invoke(capsys, "brandt", "--q", "3",
                            "--place", "t^2+1", "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    header = [ln for ln in lines if ln.startswith("#")]
    rows = [ln for ln in lines if not ln.startswith("#")]
    assert any("schema_version=1" in h for h in header)
    assert any("place=t^2+1" in h for h in header)
    mat = [[int(v) for v in ln.split("\t")] for ln in rows]
    assert len(mat) == 16 and all(len(r) == 16 for r in mat)
    assert all(sum(r) == 10 for r in mat)


def test_brandt_matches_library(capsys):
    from tjl.adelic import hecke_matrix
    from tjl.quaternion import AlgebraParams
    from tjl.funcfield import parse_poly, gf

    d = invoke_json(capsys, "brandt", "--q", "3", "--place", "t+1")
    alg = AlgebraParams(3)
    T = hecke_matrix(alg, parse_poly(gf(3), "t+1"))
    assert d["matrix"] == [[int(v) for v in row] for row in T]


def test_verify_trivial_sigma(capsys):
    d = invoke_json(capsys, "verify", "--q", "3", "--N", "1",
                    "--sigma", "trivial")
    assert d["all_claims_ok"] is True
    r = d["sigma_reports"][0]
    assert r["sigma"] == {"orbit": [0], "s": 0, "dim": 1}
    assert r["infinity_dim_sum"] == 1 == r["dim"]
    (block,) = r["blocks"]
    at = {e["place"]: e["value"]["coeffs"][0]
          for e in block["eigenvalues"]}
    # q + 1 at degree one, q^2 + 1 at degree two
    assert at["t+2"] == 4 and at["t+1"] == 4
    assert at["t^2+1"] == 10


def test_verify_all_sigmas(capsys):
    d = invoke_json(capsys, "verify", "--q", "3", "--N", "1")
    assert len(d["sigma_reports"]) == 7
    assert d["all_claims_ok"] is True
    by_label = {(tuple(r["sigma"]["orbit"]), r["sigma"]["s"]): r
                for r in d["sigma_reports"]}
    assert by_label[((1, 3), 0)]["blocks"][0]["infinity_orbit"] == [5, 7]
    assert by_label[((5, 7), 0)]["blocks"][0]["infinity_orbit"] == [1, 3]
    assert by_label[((2, 6), 0)]["blocks"][0]["infinity_orbit"] == [2, 6]
    assert d["round_trips"]["count"] == 5
    for u in d["witness_uniqueness"]:
        assert u["witnesses"] == u["cosets"]


def test_basis_lines(capsys):
    d = invoke_json(capsys, "basis", "--q", "3", "--sigma", "1:0")
    assert d["sigma"]["orbit"] == [1, 3]
    assert sorted(l["chi"] for l in d["lines"]) == [5, 7]
    assert all(l["a"] == 0 for l in d["lines"])
    assert len(d["lines"]) == d["dim"] == 2


def test_usage_errors_exit_2(capsys):
    code, out, err = invoke(capsys, "verify", "--q", "2", "--N", "1")
    assert code == 2
    assert json.loads(err)["error"] == "usage"

    code, _, err = invoke(capsys, "brandt", "--q", "3", "--place", "t")
    assert code == 2

    code, _, err = invoke(capsys, "brandt", "--q", "3", "--place", "t+t")
    assert code == 2

    code, _, err = invoke(capsys, "irreps", "--q", "6", "--n", "2")
    assert code == 2

    code, _, err = invoke(capsys, "irreps", "--q", "3", "--n", "5")
    assert code == 2

    code, _, err = invoke(capsys, "tame", "--q", "3", "--n", "2",
                          "--format", "tsv")
    assert code == 2

    code, _, _ = invoke(capsys, "bogus")
    assert code == 2

    code, _, _ = invoke(capsys, "verify", "--q", "3", "--sigma", "x:y")
    assert code == 2


def test_resource_cap_exit_3(capsys):
    code, out, err = invoke(capsys, "irreps", "--q", "9", "--n", "4")
    assert code == 3
    payload = json.loads(err)
    assert payload["error"] == "resource"
    assert "hint" in payload


def test_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = invoke(capsys, "orbits", "--q", "3", "--n", "2",
                          "--output", str(path))
    assert code == 0 and out == ""
    d = json.loads(path.read_text())
    assert d["modulus"] == 8
    # canonical serialization: sorted keys, compact separators
    assert path.read_text() == json.dumps(
        d, sort_keys=True, separators=(",", ":")) + "\n"


def test_main_raises_systemexit():
    with pytest.raises(SystemExit) as exc:
        main(["orbits", "--q", "3", "--n", "2", "--output", os.devnull])
    assert exc.value.code == 0


def test_thread_count_does_not_change_bytes(tmp_path):
    outs = []
    for threads in ("1", "3"):
        env = dict(os.environ, TJL_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "tjl.cli", "verify", "--q", "3",
             "--N", "1"],
            capture_output=True, env=env, check=True)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]

    env = dict(os.environ, TJL_THREADS="banana")
    proc = subprocess.run(
        [sys.executable, "-m", "tjl.cli", "orbits", "--q", "3", "--n", "2"],
        capture_output=True, env=env)
    assert proc.returncode == 2
