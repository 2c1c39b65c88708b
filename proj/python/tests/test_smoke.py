import json

import numpy as np
import pytest

import jetmech


def test_legendre_free_particle():
    L = jetmech.Lagrangian.builtin("free_particle")
    assert list(L.legendre_restricted([0, 0, 2])) == [0, 0, 2]
    assert list(L.legendre_extended([0, 0, 2])) == [0, 0, -2, 2]
    assert L.is_regular([0, 0, 2])


def test_singular_lagrangian_raises():
    L = jetmech.Lagrangian.builtin("linear_velocity")
    with pytest.raises(jetmech.SingularLagrangian):
        L.euler_lagrange_field([0, 0, 1])
    with pytest.raises(jetmech.Error):
        L.invert_legendre([0, 0, 1])


def test_driven_oscillator_matches_closed_form():
    L = jetmech.Lagrangian.builtin("driven_oscillator")
    traj = jetmech.simulate(L, "lagrangian", [0.0, 0.0], t0=0.0, t1=10.0, step=1e-3)
    assert traj.shape == (10001, 3)
    assert traj[-1, 0] == 10.0
    assert abs(traj[-1, 1] - 0.5 * (np.sin(10) - 10 * np.cos(10))) <= 1e-6


def test_routes_agree():
    L = jetmech.Lagrangian.builtin("harmonic")
    lag = jetmech.simulate(L, "lagrangian", [1.0, 0.5], t1=1.0)
    ham = jetmech.simulate(L, "hamiltonian", [1.0, 0.5], t1=1.0)
    assert np.max(np.abs(lag - ham)) <= 1e-10


def test_expression_with_parameters():
    L = jetmech.Lagrangian.from_expression("0.5*m*v1*v1 - 0.5*k*q1*q1", parameters={"m": 2, "k": 8})
    assert L.euler_lagrange_field([0, 1, 0])[2] == pytest.approx(-4)
    value, grad, hess = L.jet2([0, 1, 3])
    assert value == pytest.approx(5)
    assert np.array_equal(hess, hess.T)
    with pytest.raises(jetmech.ParseError):
        jetmech.Lagrangian.from_expression("v1 +")


def test_structure_maps_are_exact():
    for name in ["A_PI", "B_PI", "A_TILDE", "B_TILDE"]:
        report = jetmech.verify_structure_map(name, n=2, samples=20, seed=7)
        assert report["pass"]
        assert report["max_error"] == 0


def test_canonical_structure_is_skew():
    m = jetmech.canonical_structure("OMEGA_J1TILDE", 1)
    assert m.shape == (7, 7)
    assert np.array_equal(m, -m.T)
    assert np.linalg.matrix_rank(m) == 6


def test_submanifold_and_equality_checks():
    L = jetmech.Lagrangian.builtin("caldirola_kanai")
    assert jetmech.check_dl_tilde(L, samples=10)["pass"]
    assert jetmech.check_dfh(L.hamiltonian(), samples=10)["pass"]
    assert jetmech.equality_check(L, "extended", samples=20)["pass"]


def test_equivalence_report():
    L = jetmech.Lagrangian.builtin("driven_oscillator")
    r = jetmech.equivalence_report(L, [1.0, 0.5], t1=1.0)
    assert r["sup_gap"] <= 1e-6
    assert 8 <= r["order_estimate"] <= 32


def test_cli_in_process():
    code, out, _ = jetmech.run_cli(["legendre", "--scenario", "free_particle", "--point", "0,0,2"])
    assert code == 0
    assert json.loads(out) == {"extended": [0, 0, -2, 2], "regular": True, "restricted": [0, 0, 2]}
    code, _, err = jetmech.run_cli(["verify", "--suite", "maps", "--tol", "0"])
    assert code == 2
    assert "tolerance" in err
