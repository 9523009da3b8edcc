import json
import subprocess
import sys

import pytest

from codensity.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv,size",
    [
        (["filter", "3"], 8),
        (["neighbourhood", "2"], 16),
        (["m_s", "2", "--semiring", "bool"], 4),
        (["m_s", "2", "--semiring", "z3"], 9),
        (["ultrafilter", "3"], 3),
        (["vietoris-finite", "2"], 4),
        (["vect-double-dual", "2"], 4),
    ],
)
def test_compute_cardinalities(capsys, argv, size):
    code, out, _ = run(capsys, "compute", *argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["cardinality"] == size
    assert doc["schema"] == "codensity.report" and doc["version"] == 1


def test_compute_lists_filters(capsys):
    _, out, _ = run(capsys, "compute", "filter", "2")
    doc = json.loads(out)
    assert len(doc["elements"]) == 4
    assert len(doc["unit"]) == 2 and doc["mult"] is not None


def test_compute_refuses_large_mult(capsys):
    _, out, _ = run(capsys, "compute", "neighbourhood", "2")
    doc = json.loads(out)
    assert doc["mult"] is None and doc["notes"]


def test_compute_unknown_preset(capsys):
    code, _, err = run(capsys, "compute", "nonsense", "1")
    assert code == 2 and "unknown preset" in err


def test_catalog_build_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "catalog", "build", "--kind", "msl", "--max-size", "5", "--out", str(a))[0] == 0
    assert run(capsys, "catalog", "build", "--kind", "msl", "--max-size", "5", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_catalog_build_over_cap(capsys):
    code, _, err = run(capsys, "catalog", "build", "--kind", "msl", "--max-size", "9")
    assert code == 2 and "cap" in err


def test_verify_reports_are_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("r1.json", "r2.json"):
        p = tmp_path / name
        code, _, _ = run(capsys, "verify", "--bundle", "m_s", "--max-carrier", "2", "--seed", "3", "--out", str(p))
        assert code == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["ok"] and "timing_seconds" not in doc


def test_verify_uses_catalog_directory(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CODENSITY_CATALOG_DIR", str(tmp_path))
    assert run(capsys, "catalog", "build", "--kind", "msl", "--max-size", "4")[0] == 0
    assert (tmp_path / "msl-4.json").exists()
    code, out, _ = run(capsys, "verify", "--bundle", "filter", "--max-size", "4", "--max-carrier", "1")
    assert code == 0
    assert json.loads(out)["catalog_file"] == "msl-4.json"


def test_verify_corrupt_catalog_is_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", "--bundle", "filter", "--catalog", str(bad))
    assert code == 2 and "catalog" in err
    code, _, _ = run(capsys, "verify", "--bundle", "filter", "--catalog", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_wrong_catalog_kind(tmp_path, capsys):
    p = tmp_path / "ba.json"
    run(capsys, "catalog", "build", "--kind", "ba", "--max-size", "4", "--out", str(p))
    code, _, err = run(capsys, "verify", "--bundle", "filter", "--catalog", str(p))
    assert code == 2 and "expected msl" in err


def test_verify_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"bundle": "filter-kleisli", "max_size": 2, "max_carrier": 1}))
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["config"]["bundle"] == "filter-kleisli"
    cfg.write_text(json.dumps({"bundel": "filter"}))
    assert run(capsys, "verify", "--config", str(cfg))[0] == 2


def test_verify_failure_exit_code(capsys):
    # sets up to 3 need Boolean algebras up to 8; an undersized catalog is refused
    code, _, _ = run(capsys, "verify", "--bundle", "ultrafilter", "--max-size", "4")
    assert code == 2


def test_density_check_exit_codes(capsys):
    code, out, _ = run(capsys, "density-check", "--kind", "set", "--max-size", "3", "--objects", "1")
    assert code == 0 and json.loads(out)["dense"]
    code, out, _ = run(capsys, "density-check", "--kind", "set", "--max-size", "3", "--objects", "0")
    assert code == 1 and not json.loads(out)["dense"]
    code, _, _ = run(capsys, "density-check", "--kind", "ba", "--max-size", "8", "--sub-max-size", "4")
    assert code == 1


@pytest.mark.parametrize("which", ["birkhoff", "relations", "vect"])
def test_duality_check(capsys, which):
    code, out, _ = run(capsys, "duality-check", which, "--samples", "50")
    assert code == 0 and json.loads(out)["ok"]


def test_argparse_errors_exit_two():
    proc = subprocess.run([sys.executable, "-m", "codensity", "verify", "--bundle", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_verify_table_format(capsys):
    code, out, _ = run(capsys, "verify", "--bundle", "m_s", "--max-carrier", "1", "--format", "table")
    assert code == 0
    assert out.splitlines()[0] == "bundle m_s: PASS"
