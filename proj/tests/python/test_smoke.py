import json
import math
import pathlib

import numpy as np
import pytest

import catsim

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_ladder_commutator_below_cutoff():
    ops = catsim.ladder_operators(6)
    a, ad = ops["annihilation"], ops["creation"]
    comm = a @ ad - ad @ a
    assert np.allclose(comm[:5, :5], np.eye(5))
    assert np.allclose(ops["number"], ad @ a)


def test_coherent_displacement_agree():
    n = 30
    alpha = 0.7 - 0.4j
    d = catsim.displacement(alpha, n)
    vac = catsim.fock_state(0, n)
    assert np.allclose(d @ vac, catsim.coherent_state(alpha, n), atol=1e-10)


def test_cat_mean_photon_number():
    n = 40
    psi = catsim.cat_state(2.0, "even", n)
    nbar = np.vdot(psi, catsim.ladder_operators(n)["number"] @ psi).real
    assert nbar == pytest.approx(4 * math.tanh(4), abs=1e-10)


def test_bell_state_entanglement():
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / math.sqrt(2)
    rho = catsim.dm(psi)
    assert catsim.negativity(rho, (2, 2)) == pytest.approx(0.5, abs=1e-12)
    assert catsim.mutual_information(rho, (2, 2)) == pytest.approx(2 * math.log(2), abs=1e-12)


def test_evolve_keeps_trace_and_parity():
    p = catsim.ModeParams(U=1.0, G=10 * np.exp(-1j * math.pi / 4), eta=1.0)
    model = catsim.build_one_mode(p, 20)
    rho0 = catsim.dm(catsim.fock_state(0, 20))
    times, states, drift = catsim.evolve(model, rho0, [0.0, 0.1, 0.2])
    assert len(states) == 3 and max(drift) < 1e-10
    parity = catsim.ladder_operators(20)["parity"]
    assert abs(catsim.expectation(parity, states[-1]) - 1.0) < 1e-8


def test_kernel_steady_state_two_level_decay():
    p = catsim.ModeParams(gamma=1.0, U=0.5)
    model = catsim.build_one_mode(p, 4)
    rho = catsim.steady_state(model, "kernel")
    assert abs(rho[0, 0] - 1.0) < 1e-10


def test_wigner_matches_analytic_cat():
    axis = np.linspace(-3, 3, 13)
    rho = catsim.dm(catsim.cat_state(1.5, "odd", 30))
    w = catsim.wigner(rho, axis, axis)
    ref = catsim.wigner_cat_analytic(1.5, "odd", axis, axis)
    assert np.max(np.abs(w - ref)) < 1e-9


def test_quadrature_normalized():
    xs = np.linspace(-8, 8, 801)
    rho = catsim.dm(catsim.coherent_state(1.0, 30))
    p = np.asarray(catsim.quadrature_distribution(rho, 0.0, xs))
    assert np.sum((p[1:] + p[:-1]) * np.diff(xs)) / 2 == pytest.approx(1.0, abs=1e-6)
    assert xs[np.argmax(p)] == pytest.approx(math.sqrt(2), abs=0.02)


def test_validation_errors_are_value_errors():
    with pytest.raises(catsim.ValidationError):
        catsim.fock_state(5, 4)
    with pytest.raises(ValueError):
        catsim.resolve_config({"system": "three_mode"})


def test_resolve_config_round_trip():
    cfg = {
        "system": "one_mode",
        "energy_unit": "eta_a",
        "mode_a": {"U": 1, "G": [7, -7], "eta": 1},
        "truncation": 12,
        "initial_state": {"type": "superposition", "terms": [{"n": 0, "amplitude": 1}, {"n": 1, "amplitude": 1}]},
        "time": {"t_max": 0.5, "samples": 6},
    }
    resolved = catsim.resolve_config(cfg)
    assert catsim.resolve_config(resolved) == resolved
    amp = resolved["initial_state"]["terms"][0]["amplitude"]
    assert amp[0] == pytest.approx(1 / math.sqrt(2))


def test_run_scenario_writes_files(tmp_path):
    cfg = {
        "system": "one_mode",
        "energy_unit": "eta_a",
        "mode_a": {"U": 1, "G": [7, -7], "eta": 1, "gamma": 0.1},
        "truncation": 16,
        "initial_state": {"type": "fock", "n": 0},
        "time": {"t_max": 0.3, "samples": 4},
        "outputs": {"wigner": [{"times": ["final"], "re": [-3, 3, 7], "im": [-3, 3, 7]}]},
    }
    res = catsim.run_scenario(cfg, tmp_path)
    assert res["ok"], res
    lines = (tmp_path / "timeseries.csv").read_text().splitlines()
    assert lines[0] == "t,n_a,parity_a,entropy,purity,trace_drift"
    assert len(lines) == 5
    meta = json.loads((tmp_path / "meta.json").read_text())
    assert meta["status"] == "ok"
    assert (tmp_path / "wigner_a_final.csv").exists()


def test_shipped_scenarios_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(catsim.config_schema())
    files = sorted((ROOT / "scenarios").glob("*.json"))
    assert files
    for f in files:
        doc = json.loads(f.read_text())
        jsonschema.validate(doc, schema)
        catsim.resolve_config(doc)
