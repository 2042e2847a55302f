import json
import math
import os
import subprocess

import pytest

try:
    import rpcmlab as lab
except ImportError:
    import _rpcmlab as lab

DIRAC0 = {"type": "dirac", "value": 0.0}


def dyadic():
    return lab.make_system("dyadic", DIRAC0, DIRAC0)


def test_family_catalog():
    ids = lab.family_ids()
    assert "dyadic" in ids and "lsv" in ids and "counterexample" in ids


def test_eval_and_inverses():
    dy = dyadic()
    assert lab.eval_map(dy, 0.0, 0.0, 0.3) == pytest.approx(0.6)
    assert lab.invert_left(dy, 0.0, 0.5) == pytest.approx(0.25)
    lsv = lab.make_system("lsv", {"type": "dirac", "value": 1.0}, DIRAC0)
    assert lab.invert_left(lsv, 1.0, 0.5) == pytest.approx((math.sqrt(5) - 1) / 4)
    lls = lab.make_system(
        "linear-low-slope", DIRAC0, {"type": "discrete", "atoms": [(2.0, 1.0)]}
    )
    assert lab.invert_right(lls, 2.0, 0.125) == pytest.approx(0.75)
    assert lab.invert_right(lls, 2.0, 0.5) is None


def test_sequences_and_eta():
    lls = lab.make_system(
        "linear-low-slope", DIRAC0, {"type": "discrete", "atoms": [(3.0, 1.0)]}
    )
    ps = lab.partition_sequences(lls, 0.0, 3.0, 10)
    assert ps["eta"] == 3
    assert ps["x"][:4] == [0.5, 0.25, 0.125, 0.0625]
    assert ps["y"][1] == pytest.approx(0.75)


def test_conditions_and_tail_index():
    rep = lab.check_conditions(dyadic(), 128, 64)
    assert rep["all_pass"]
    assert lab.tail_index(dyadic(), 0.1, 64) == 5


def test_induced_and_density():
    st = lab.induced_step(dyadic(), 0.6, 0.0, 0.0)
    assert st["left_steps"] == 2
    assert st["landing"] == pytest.approx(0.8)
    dens = lab.induced_density(dyadic(), cells=16, samples_per_cell=2000, seed=5)
    assert dens["converged"]
    for v in dens["h0"]:
        assert v == pytest.approx(2.0, abs=0.1)


def test_orbit_and_fit():
    occ = lab.run_orbit(dyadic(), 0.7, 100000, 11, 0.0, n_cells=5)
    ratios = dict(zip(occ["labels"], occ["ratios"]))
    assert ratios["X_1"] == pytest.approx(0.5, abs=0.05)
    fit = lab.fit_exponent([(n, n**-1.5) for n in range(10, 2000)], 10, 2000)
    assert fit["exponent"] == pytest.approx(-1.5, abs=1e-9)


def test_sandwich():
    lsv = lab.make_system("lsv", {"type": "uniform", "lo": 0.5, "hi": 0.8}, DIRAC0)
    rep = lab.sandwich_report(lsv, 0.5, 0.8, 1000, 10000)
    assert rep["overall"] == "finite"


def test_cli_roundtrip(tmp_path):
    cli = os.environ.get("RPCM_CLI")
    if not cli:
        pytest.skip("RPCM_CLI not set")
    cfg = {
        "schema_version": 1,
        "family": "linear-low-slope",
        "nu_a": {"type": "dirac", "value": 0.0},
        "nu_b": {"type": "discrete", "atoms": [{"param": 1.0, "weight": 1.0}]},
        "sequences": {"n_terms": 6, "m_terms": 5, "beta": 1.0},
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "out"
    r = subprocess.run(
        [cli, "--command", "sequences", "--config", str(cfg_path), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0, r.stderr
    csv = (out / "sequences_beta1.csv").read_text()
    assert csv.splitlines()[1].startswith("1,0.5,1,")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "sequences"
    assert any(f["name"] == "sequences_beta1.csv" for f in manifest["files"])
