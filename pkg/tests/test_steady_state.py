import math

import numpy as np
import pytest

from spinbath import (BathSpec, DensityKind, DriveConfig, Polarization, RateMatrix,
                      boltzmann_reference, build_spin_system, coupling_operator,
                      fourier_elements, rate_matrix, solve_circular_analytic,
                      solve_steady_state)


def rates_from(matrix):
    return RateMatrix(gamma_total=np.asarray(matrix, dtype=float), diagnostics=None)


def test_two_state_pairwise_balance():
    a, b = 0.7, 0.3
    p = solve_steady_state(rates_from([[0.0, b], [a, 0.0]]))
    assert np.allclose(p.p, [b / (a + b), a / (a + b)], atol=1e-14)


def test_uniform_symmetric_rates():
    dim = 6
    g = np.full((dim, dim), 0.4)
    np.fill_diagonal(g, 0.0)
    p = solve_steady_state(rates_from(g))
    assert np.allclose(p.p, np.full(dim, 1.0 / dim), atol=1e-13)


def test_undriven_pipeline_recovers_boltzmann():
    s = build_spin_system(7)
    fs = solve_circular_analytic(s, DriveConfig(Polarization.RIGHT_CIRCULAR, 0.0, 0.1), n_t=64)
    v = coupling_operator(s, (1.0, 0.0, 0.0))
    for density in DensityKind:
        b = BathSpec(density=density, beta_hbar_omega=10.0, gamma=(1.0, 0.0, 0.0), l_max=16)
        p = solve_steady_state(rate_matrix(fourier_elements(fs, v, 16), b))
        eq = boltzmann_reference(s, 0.1, 10.0)
        assert np.max(np.abs(p.p - eq.p)) < 1e-8


def test_boltzmann_reference_uniform_at_zero_field():
    s = build_spin_system(7)
    eq = boltzmann_reference(s, 0.0, 5.0)
    assert np.allclose(eq.p, np.full(8, 1.0 / 8.0))


def test_boltzmann_reference_mean_values():
    # Independent oracle: direct Boltzmann sum with math.fsum.
    s = build_spin_system(7)
    for beta, expected in ((1.0, None), (10.0, None)):
        m = [3.5 - i for i in range(8)]
        w = [math.exp(-beta * 0.1 * mi) for mi in m]
        z = math.fsum(w)
        mean = math.fsum(mi * wi for mi, wi in zip(m, w)) / z
        eq = boltzmann_reference(s, 0.1, beta)
        assert float(s.m_values() @ eq.p) == pytest.approx(mean, abs=1e-13)
    assert float(s.m_values() @ boltzmann_reference(s, 0.1, 1.0).p) == pytest.approx(-0.52, abs=0.005)
    assert float(s.m_values() @ boltzmann_reference(s, 0.1, 10.0).p) == pytest.approx(-2.921, abs=0.005)


def test_boltzmann_reference_overflow_safe():
    s = build_spin_system(15)
    eq = boltzmann_reference(s, 50.0, 100.0)
    assert np.isfinite(eq.p).all()
    assert eq.p.sum() == pytest.approx(1.0, abs=1e-12)
    assert eq.p[-1] == pytest.approx(1.0, abs=1e-12)  # everything in m = -J


def test_boltzmann_reference_rejects_bad_beta():
    s = build_spin_system(3)
    with pytest.raises(ValueError):
        boltzmann_reference(s, 0.1, 0.0)


def test_random_rate_matrices_probability_properties():
    rng = np.random.default_rng(17)
    for _ in range(500):
        dim = int(rng.integers(2, 13))
        g = rng.random((dim, dim))
        np.fill_diagonal(g, 0.0)
        p = solve_steady_state(rates_from(g))
        assert abs(p.p.sum() - 1.0) < 1e-12
        assert np.all(p.p >= 0.0)
        assert p.residual <= 1e-10 * g.max()


def test_gauge_invariance_under_rate_scaling():
    rng = np.random.default_rng(23)
    g = rng.random((9, 9))
    np.fill_diagonal(g, 0.0)
    p1 = solve_steady_state(rates_from(g))
    p2 = solve_steady_state(rates_from(1e6 * g))
    p3 = solve_steady_state(rates_from(1e-6 * g))
    assert np.max(np.abs(p1.p - p2.p)) < 1e-12
    assert np.max(np.abs(p1.p - p3.p)) < 1e-12


def test_degenerate_steady_state_error():
    # Two disconnected blocks: the generator kernel is two-dimensional.
    g = np.zeros((4, 4))
    g[0, 1] = g[1, 0] = 1.0
    g[2, 3] = g[3, 2] = 1.0
    with pytest.raises(ValueError, match="degenerate steady state"):
        solve_steady_state(rates_from(g))
