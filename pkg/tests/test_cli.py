"""End-to-end CLI behavior through main(argv)."""

import json

import pytest

from rescrit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    return code, json.loads(out)


def test_catalog_list_table(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    lines = [l for l in out.splitlines() if l.strip()]
    assert code == 0
    assert len(lines) == 13
    assert any(l.startswith("pencil-3") and "central" in l for l in lines)
    assert any("affine" in l for l in lines)


def test_catalog_list_json(capsys):
    code, rows = run_json(capsys, "catalog", "list", "--json")
    assert code == 0
    assert len(rows) == 13
    assert {"name", "size", "rank", "central", "free", "reduced_scope", "summary"} <= set(
        rows[0]
    )


def test_catalog_show(capsys):
    code, payload = run_json(capsys, "catalog", "show", "x3")
    assert code == 0
    assert payload["whitney"] == [1, 6, 12, 7]
    assert payload["free"] is False
    assert payload["derivation_bound"] == 6
    assert payload["arrangement"]["forms"]


def test_catalog_show_needs_entry(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["catalog", "show"])
    assert exc.value.code == 2


def test_unknown_entry_is_a_usage_error(capsys):
    code, out, err = run(capsys, "info", "--name", "nope")
    assert code == 2
    assert err.startswith("error:")
    assert "nope" in err


def test_info_central(capsys):
    code, payload = run_json(capsys, "info", "--name", "pencil-3")
    assert code == 0
    assert payload["poincare"] == [1, 3, 2]
    assert payload["euler_characteristic_magnitude"] == 0
    assert payload["irreducible"] is True
    assert payload["essential"] is True


def test_info_affine(capsys):
    code, payload = run_json(capsys, "info", "--name", "discriminantal-2-2")
    assert code == 0
    assert payload["central"] is False
    assert payload["irreducible"] is None
    assert payload["poincare"] == [1, 5, 6]


def test_info_from_json_file(capsys, tmp_path):
    _, shown = run_json(capsys, "catalog", "show", "boolean-2")
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(shown["arrangement"]))
    code, payload = run_json(capsys, "info", "--arrangement", str(path))
    assert code == 0
    assert payload["arrangement"] == "copy"
    assert payload["size"] == 2


def test_os_betti(capsys):
    code, payload = run_json(
        capsys, "os-betti", "--name", "pencil-3", "--weights", "1,1,-2"
    )
    assert code == 0
    assert payload["betti"] == [0, 1, 1]
    assert payload["least_p"] == 1
    assert payload["schema_version"] == 1


def test_weight_count_mismatch(capsys):
    code, out, err = run(capsys, "os-betti", "--name", "pencil-3", "--weights", "1,1")
    assert code == 2
    assert "expected 3 weights" in err


def test_derivations(capsys):
    code, payload = run_json(
        capsys, "derivations", "--name", "x3", "--bound", "6"
    )
    assert code == 0
    assert payload["degrees"] == [1, 3, 3, 3]
    assert payload["exhausted"] is True
    assert len(payload["generators"][0]["components"]) == 3


def test_free_check_not_free(capsys):
    code, payload = run_json(capsys, "free-check", "--name", "x3", "--bound", "6")
    assert code == 0
    assert payload["status"] == "not-free"
    assert payload["reason"] == "more minimal generators than the ambient dimension"


def test_free_check_free(capsys):
    code, payload = run_json(capsys, "free-check", "--name", "pencil-4")
    assert code == 0
    assert payload["status"] == "free"
    assert payload["exponents"] == [0, 2]


def test_log_betti(capsys):
    code, payload = run_json(
        capsys,
        "log-betti",
        "--name",
        "pencil-3",
        "--weights",
        "1,1,-2",
        "--degrees",
        "0..2",
    )
    assert code == 0
    assert [row["total_degree"] for row in payload["degrees"]] == [0, 1, 2]
    assert all(isinstance(row["betti"], list) for row in payload["degrees"])


def test_critical_ideal_universal(capsys):
    code, payload = run_json(
        capsys, "critical-ideal", "--name", "pencil-3", "--universal"
    )
    assert code == 0
    assert payload["universal"] is True
    assert payload["weights"] is None
    assert len(payload["generators"]) == 2
    assert len(payload["variables"]) == 5  # 2 coordinates + 3 weights


def test_critical_ideal_specialized(capsys):
    code, payload = run_json(
        capsys, "critical-ideal", "--name", "pencil-3", "--weights", "1,1,-2"
    )
    assert code == 0
    assert payload["weights"] == ["1", "1", "-2"]
    assert payload["variables"] == ["x", "y"]
    assert any(g != "0" for g in payload["generators"])


def test_codim(capsys):
    code, payload = run_json(
        capsys, "codim", "--name", "pencil-3", "--weights", "1,1,-2"
    )
    assert code == 0
    assert payload["critical_codim"] == 1
    assert payload["critical_empty"] is False


def test_verify_central(capsys):
    code, payload = run_json(
        capsys, "verify", "--name", "braid-3", "--weights", "1,1,-2,0,0,0"
    )
    assert code == 0
    assert payload["verdict"] == "theorem-satisfied"
    assert payload["coned"] is False
    assert payload["applicability"] == {"free": True, "rank_le_3": True, "p_le_2": True}
    assert payload["guaranteed"] is True


def test_verify_affine_cones_first(capsys):
    code, payload = run_json(
        capsys, "verify", "--name", "discriminantal-2-2", "--weights", "1,0,1,0,-2"
    )
    assert code == 0
    assert payload["coned"] is True
    assert len(payload["coned_weights"]) == 6
    assert payload["weights"] == ["1", "0", "1", "0", "-2"]
    assert payload["verdict"] in {"theorem-satisfied", "vacuous"}


def test_sweep_subset(capsys):
    code, out, _ = run(
        capsys, "sweep", "--name", "pencil-3", "--generic", "2", "--seed", "3"
    )
    assert code == 0
    assert "worst=clean" in out
    assert out.splitlines()[0].startswith("pencil-3")


def test_sweep_family_table_and_json(capsys, tmp_path):
    family = {
        "arrangement": "pencil-3",
        "samples": [["1", "1", "-2"], ["1", "2", "3"]],
    }
    path = tmp_path / "family.json"
    path.write_text(json.dumps(family))
    code, out, _ = run(capsys, "sweep", "--family", str(path))
    assert code == 0
    rows = out.splitlines()
    assert rows[0].startswith("weights")
    assert len(rows) == 3

    out_path = tmp_path / "report.json"
    code, payload = run_json(
        capsys, "sweep", "--family", str(path), "--json", "--out", str(out_path)
    )
    assert code == 0
    assert payload["sample_count"] == 2
    verdicts = {r["verdict"] for r in payload["reports"]}
    assert verdicts == {"theorem-satisfied", "vacuous"}
    assert json.loads(out_path.read_text()) == payload


def test_sweep_family_lines_grid(capsys, tmp_path):
    # one parameter line: weights (t, t, -2t); resonance for every t != 0
    family = {
        "arrangement": "pencil-3",
        "lines": [{"direction": ["1", "1", "-2"], "values": ["1", "2"]}],
        "points": [["-1"]],
    }
    path = tmp_path / "line.json"
    path.write_text(json.dumps(family))
    code, payload = run_json(capsys, "sweep", "--family", str(path), "--json")
    assert code == 0
    assert payload["sample_count"] == 3
    assert all(r["verdict"] == "theorem-satisfied" for r in payload["reports"])


def test_ideal_dim_and_count(capsys, tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# two conics\nvars: x, y\nx^2 - y\ny^2 - x\n")
    code, payload = run_json(capsys, "ideal", "dim", str(path))
    assert code == 0
    assert payload == {"trivial": False, "dimension": 0, "codimension": 2}
    code, payload = run_json(capsys, "ideal", "count", str(path))
    assert code == 0
    assert payload == {"count": 4}


def test_ideal_quotient_and_saturate(capsys, tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("vars: x, y, z\nx*z\ny*z\n")
    code, payload = run_json(capsys, "ideal", "quotient", str(path), "--by", "z")
    assert code == 0
    assert sorted(payload["generators"]) == ["x", "y"]

    path2 = tmp_path / "emb.txt"
    path2.write_text("vars: x, y\nx^2\nx*y\n")
    code, payload = run_json(capsys, "ideal", "saturate", str(path2), "--by", "y")
    assert code == 0
    assert payload["generators"] == ["x"]


def test_ideal_count_rejects_positive_dimension(capsys, tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("vars: x, y\nx\n")
    code, out, err = run(capsys, "ideal", "count", str(path))
    assert code == 2
    assert "not zero-dimensional" in err


def test_ideal_quotient_requires_by(capsys, tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("vars: x\nx\n")
    with pytest.raises(SystemExit) as exc:
        cli.main(["ideal", "quotient", str(path)])
    assert exc.value.code == 2


def test_generator_file_needs_header(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("x^2 - y\n")
    code, out, err = run(capsys, "ideal", "dim", str(path))
    assert code == 2
    assert "vars:" in err


def test_missing_file_is_reported(capsys):
    code, out, err = run(capsys, "ideal", "dim", "/definitely/not/here.txt")
    assert code == 2
    assert err.startswith("error:")


def test_self_test_command(capsys):
    code, out, _ = run(capsys, "self-test")
    assert code == 0
    closing = out.strip().splitlines()[-1]
    assert closing.endswith("checks passed")
    failed = [l for l in out.splitlines() if l.startswith("FAIL")]
    assert failed == []
