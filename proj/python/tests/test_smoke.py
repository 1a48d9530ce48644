import cmath
import math

import numpy as np
import pytest

import waveguide as wg

K = wg.K_DEFAULT
COARSE = wg.SolveOptions(h=math.pi / K / 10)


def test_geometry():
    g = wg.build_omega(K, 2.5)
    assert g.L == 2.5
    assert g.ell == pytest.approx(1.25)
    assert g.profile(0.0) == 2.5
    assert g.profile(2.0) == 1.0
    s = wg.build_staircase(K, 4.5, [2.5, 2.0, 1.5, 1.0])
    assert s.heights == [4.5, 2.5, 2.0, 1.5, 1.0]
    with pytest.raises(wg.ValidationError):
        wg.build_omega(K, 0.5)
    with pytest.raises(ValueError):
        wg.build_staircase(K, 3.0, [1.0, 2.0])


def test_full_solve_conserves_energy():
    out = wg.solve_full(wg.build_omega(K, 2.2), COARSE)
    assert abs(out["R"]) ** 2 + abs(out["T"]) ** 2 == pytest.approx(1.0, abs=1e-10)
    assert out["energy_residual"] < 1e-10
    assert out["provenance"] == "direct_full_guide"
    assert not out["diagnostics"]["ill_conditioned"]


def test_half_guides_recombine():
    g = wg.build_omega(K, 2.2)
    r = wg.solve_half(g, "neumann", COARSE)
    Rh = wg.solve_half(g, "dirichlet", COARSE)
    R, T = wg.combine(r, Rh)
    full = wg.solve_full(g, COARSE)
    assert abs(R - full["R"]) < 1e-9
    assert abs(T - full["T"]) < 1e-9
    with pytest.raises(wg.ValidationError):
        wg.solve_half(g, "robin", COARSE)


def test_limit_matrices():
    g = wg.build_omega(K, 2.0)
    S2 = wg.limit_mixed(g, COARSE)
    S4 = wg.limit_neumann(g, COARSE)
    assert S2.shape == (2, 2) and S4.shape == (4, 4)
    assert S2.dtype == np.complex128
    assert wg.unitarity_residual(S2) < 1e-10
    assert np.allclose(S4 @ S4.conj().T, np.eye(4), atol=1e-10)
    center, radius = wg.mobius_circle_2(S2)
    assert abs(center) < 1e-8 and radius == pytest.approx(1.0, abs=1e-8)


def test_asymptotic_periodicity():
    S2 = wg.limit_mixed(wg.build_omega(K, 2.0), COARSE)
    period = math.pi / wg.branch_gamma(K)
    assert abs(wg.r_asy(S2, K, 3.1 + period) - wg.r_asy(S2, K, 3.1)) < 1e-12
    assert wg.predicted_periods(K)["trapped"] == pytest.approx(1.25)
    assert wg.threshold_lambda(K).real == pytest.approx(0.0)


def test_exceptional_case_is_raised():
    with pytest.raises(wg.ExceptionalCaseError):
        wg.mobius_circle_2(np.eye(2, dtype=complex))


def test_sweep_and_refine():
    recs = wg.sweep(K, 2.0, 2.1, 0.05, "r", options=COARSE, threads=1)
    assert [round(L, 12) for L, _, _ in recs] == [2.0, 2.05, 2.1]
    assert all(abs(v - 1.0) < 0.05 for _, v, _ in recs)
    with pytest.raises(wg.ValidationError):
        wg.sweep(K, 3.0, 2.0, 0.1, "T")
    with pytest.raises(wg.ValidationError):
        wg.sweep(K, 2.0, 3.0, 0.1, "X")
    peak = wg.refine(K, 2.5, 2.65, "T", tol_L=1e-3)
    assert abs(peak["L"] - 2.5756) < 0.02
    assert peak["residual"] < 1e-3
    assert cmath.isfinite(wg.augmented(wg.build_omega(K, peak["L"]), COARSE)[1, 1])
