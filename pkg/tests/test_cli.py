import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hopfkit.cli import canonical_json, parse_manifest, run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GOLDEN_CASES = [
    ("report", "resonant_surface", []),
    ("cohomology", "triangular3", []),
    ("lie", "triangular3", []),
    ("deform", "triangular3", ["--t", "1/2"]),
    ("algdim", "gaussian_pair", []),
    ("vaisman", "jordan", []),
    ("resonances", "aniso", []),
]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("cmd,name,extra", GOLDEN_CASES, ids=[f"{c}-{n}" for c, n, _ in GOLDEN_CASES])
def test_golden_outputs(cmd, name, extra):
    code, out, _ = invoke(cmd, DATA / f"{name}.json", *extra, "--json")
    assert code == 0
    assert out == (GOLDEN / f"{cmd}_{name}.json").read_text()


@pytest.mark.parametrize("cmd,name,extra", GOLDEN_CASES, ids=[f"{c}-{n}" for c, n, _ in GOLDEN_CASES])
def test_json_roundtrip_byte_identical(cmd, name, extra):
    _, out, _ = invoke(cmd, DATA / f"{name}.json", *extra, "--json")
    assert canonical_json(json.loads(out)) + "\n" == out


def test_report_resonant_surface_contents():
    _, out, _ = invoke("report", DATA / "resonant_surface.json", "--json")
    r = json.loads(out)["result"]
    assert r["resonances"]["relations"] == [{"s": 1, "m": [0, 2]}]
    assert (r["cohomology"]["tangent"]["h0"], r["cohomology"]["tangent"]["h1"]) == (2, 2)
    assert r["cohomology"]["hodge"]["matrix"] == [[1, 1, 0], [0, 0, 0], [0, 1, 1]]
    assert r["algebraic_dimension"]["rank"] is None and "footnote" in r["algebraic_dimension"]
    assert r["vaisman"]["verdict"] == "NotVaisman"
    assert r["metric_flags"]["lcK"] == "yes"


def test_every_section_has_provenance():
    _, out, _ = invoke("report", DATA / "iso.json", "--json")
    r = json.loads(out)["result"]
    for key, section in r.items():
        if isinstance(section, dict):
            assert "provenance" in section or all("provenance" in v for v in section.values() if isinstance(v, dict)), key


def test_algdim_iso():
    _, out, _ = invoke("algdim", DATA / "iso.json", "--json")
    r = json.loads(out)["result"]
    assert r["rank"] == 1 and r["kernel_basis"] == [[1, -1]]


def test_deform_at_zero_gives_d_lambda():
    for name in ("resonant_surface", "triangular3"):
        _, out, _ = invoke("deform", DATA / f"{name}.json", "--t", "0", "--json")
        r = json.loads(out)["result"]
        assert r["is_d_lambda"] and r["gamma_t"]["terms"] == []


def test_vaisman_iso_runs_homogeneous_check():
    code, out, _ = invoke("vaisman", DATA / "iso.json", "--json")
    r = json.loads(out)["result"]
    assert code == 0 and r["verdict"] == "Vaisman" and r["homogeneous_metric"]["passed"]


def test_text_output_is_aligned_table():
    code, out, _ = invoke("cohomology", DATA / "aniso.json")
    assert code == 0
    assert "hodge:" in out and "  1 1 0" in out


@pytest.mark.parametrize(
    "name,field",
    [
        ("non_resonant", "not a resonance"),
        ("wrong_n", "'n'"),
        ("decimal", "lambda[2]"),
        ("not_contracting", "'lambda'"),
        ("term_index", "terms[1].i"),
        ("unknown_field", "colour"),
        ("truncated", "not valid JSON"),
    ],
)
def test_bad_manifests_exit_2(name, field):
    code, out, err = invoke("resonances", DATA / "bad" / f"{name}.json")
    assert code == 2 and out == ""
    assert field in err


def test_non_triangular_deform_exit_2():
    code, _, err = invoke("deform", DATA / "bad" / "non_triangular.json", "--t", "1/2")
    assert code == 2 and "upper triangular" in err
    code, _, err = invoke("deform", DATA / "resonant_surface.json", "--t", "0.5")
    assert code == 2 and "--t" in err


def test_missing_manifest_exit_2():
    code, _, err = invoke("lie", DATA / "nope.json")
    assert code == 2 and "nope.json" in err


def test_metric_success_and_failure_exit_codes(tmp_path):
    code, out, _ = invoke("metric", DATA / "iso.json", "--json", "--grid", "300", "--csv", tmp_path / "pts.csv")
    assert code == 0 and json.loads(out)["result"]["passed"]
    assert len((tmp_path / "pts.csv").read_text().splitlines()) > 300
    # a 0.3 finite-difference step cannot resolve the gluing band
    code, out, _ = invoke("metric", DATA / "failing_metric.json", "--json")
    assert code == 3
    assert json.loads(out)["result"]["positivity"]["failing_count"] > 0


def test_tolerance_env_override(monkeypatch):
    monkeypatch.setenv("HOPFKIT_TOL", "5")
    code, out, _ = invoke("metric", DATA / "iso.json", "--json", "--grid", "100")
    # every eigenvalue is about 4, below the overridden tolerance
    assert code == 3 and json.loads(out)["result"]["positivity"]["positivity_tol"] == 5.0
    monkeypatch.setenv("HOPFKIT_TOL", "abc")
    code, _, err = invoke("lie", DATA / "iso.json")
    assert code == 2 and "HOPFKIT_TOL" in err


def test_parse_manifest_accepts_minimal():
    mf = parse_manifest({"lambda": ["1/2", {"re": "0", "im": "1/2"}]})
    assert mf.n == 2 and mf.gamma.is_diagonal


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hopfkit", "algdim", str(DATA / "iso.json"), "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["result"]["rank"] == 1
