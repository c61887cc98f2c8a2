"""Hilbert-Schmidt and Bures geometry: closed forms against numerics."""

import numpy as np
import pytest

from xxzgeom import (
    BURES_NORM,
    ModelParams,
    bures_distance_raw,
    bures_length_vs_concurrence,
    bures_speed_vs_concurrence,
    concurrence_closed_form,
    fidelity_of_separability,
    fidelity_uhlmann,
    hs_distance,
    hs_rate_closed_form,
    hs_rate_numeric,
    hs_rate_vs_concurrence,
    hs_speed_closed_form,
    hs_speed_vs_concurrence,
    make_trajectory,
    propagate_analytic,
    sample_geometry,
    separable_fidelity_search,
    t_of_eta,
)


def random_state(rng):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    d = g @ g.conj().T
    return d / np.trace(d).real


def test_hs_rate_frozen_value():
    p = ModelParams(coupling_j=0.5, noise_alpha=0.05)
    assert hs_rate_closed_form(p, 1.0) == pytest.approx(
        1.2812318915486587, abs=1e-15
    )
    assert hs_speed_closed_form(p, 1.0) == pytest.approx(
        0.12812318915486587, abs=1e-15
    )


def test_hs_rate_matches_finite_difference():
    for j, alpha in ((0.3, 0.01), (0.3, 0.1), (0.5, 0.05)):
        p = ModelParams(coupling_j=j, noise_alpha=alpha)
        for eta in (0.3, 1.0, 2.0, 4.4):
            num = hs_rate_numeric(p, eta)
            ref = hs_rate_closed_form(p, eta)
            assert abs(num - ref) / ref < 1e-6


def test_hs_speed_identity_everywhere():
    rng = np.random.default_rng(29)
    for _ in range(100):
        j = float(rng.uniform(0.1, 1.0))
        alpha = float(rng.uniform(0.0, 1.0))
        eta = float(rng.uniform(0.1, 6.0))
        p = ModelParams(coupling_j=j, noise_alpha=alpha)
        lhs = hs_speed_closed_form(p, eta)
        rhs = 4.0 * alpha * j * hs_rate_closed_form(p, eta)
        assert lhs == pytest.approx(rhs, rel=1e-14)


def test_hs_rate_vs_concurrence_consistent():
    p = ModelParams(coupling_j=0.3, noise_alpha=0.08)
    eta = np.pi / 6
    c = concurrence_closed_form(p, eta)
    assert hs_rate_vs_concurrence(p, c, eta) == pytest.approx(
        hs_rate_closed_form(p, eta), rel=1e-13
    )
    assert hs_speed_vs_concurrence(p, c, eta) == pytest.approx(
        hs_speed_closed_form(p, eta), rel=1e-13
    )


def test_hs_rate_vs_concurrence_rejects_nodes():
    p = ModelParams(coupling_j=0.3, noise_alpha=0.08)
    with pytest.raises(ValueError):
        hs_rate_vs_concurrence(p, 0.5, np.pi / 2)


def test_hs_distance_basics():
    a = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex)
    assert hs_distance(a, a) == 0.0
    assert hs_distance(a, b) == pytest.approx(np.sqrt(2.0), abs=1e-14)


def test_uhlmann_fidelity_properties():
    rng = np.random.default_rng(31)
    for _ in range(20):
        a, b = random_state(rng), random_state(rng)
        f = fidelity_uhlmann(a, b)
        assert 0.0 <= f <= 1.0
        assert fidelity_uhlmann(a, a) == pytest.approx(1.0, abs=1e-10)
        assert f == pytest.approx(fidelity_uhlmann(b, a), abs=1e-10)


def test_uhlmann_fidelity_pure_states():
    rng = np.random.default_rng(37)
    for _ in range(20):
        va = rng.normal(size=4) + 1j * rng.normal(size=4)
        vb = rng.normal(size=4) + 1j * rng.normal(size=4)
        va /= np.linalg.norm(va)
        vb /= np.linalg.norm(vb)
        a = np.outer(va, va.conj())
        b = np.outer(vb, vb.conj())
        f = fidelity_uhlmann(a, b)
        assert f == pytest.approx(abs(np.vdot(va, vb)) ** 2, abs=1e-10)


def test_fidelity_of_separability_endpoints():
    assert fidelity_of_separability(0.0) == 1.0
    assert fidelity_of_separability(1.0) == 0.5
    assert fidelity_of_separability(0.8064744709060212) == pytest.approx(
        0.7956344566254301, abs=1e-15
    )
    with pytest.raises(ValueError):
        fidelity_of_separability(1.2)


def test_bures_length_normalization():
    assert bures_length_vs_concurrence(0.0) == pytest.approx(0.0, abs=1e-12)
    assert bures_length_vs_concurrence(1.0) == pytest.approx(1.0, abs=1e-12)
    assert bures_length_vs_concurrence(0.5) == pytest.approx(
        0.3410813774021088, abs=1e-14
    )
    assert BURES_NORM == pytest.approx(np.sqrt(2.0 - np.sqrt(2.0)), abs=1e-15)


def test_bures_length_strictly_monotonic():
    c = np.linspace(0.0, 1.0, 1001)
    lb = bures_length_vs_concurrence(c)
    assert np.all(np.diff(lb) > 0.0)


def test_bures_speed_identity():
    c = np.linspace(0.0, 1.0, 101)
    vb = bures_speed_vs_concurrence(c)
    f = fidelity_of_separability(c)
    assert np.abs(vb - np.sqrt(f / 8.0)).max() < 1e-15
    assert bures_speed_vs_concurrence(0.8064744709060212) == pytest.approx(
        0.315363769444397, abs=1e-14
    )


def test_bures_distance_raw_against_definition():
    rng = np.random.default_rng(53)
    a, b = random_state(rng), random_state(rng)
    f = fidelity_uhlmann(a, b)
    assert bures_distance_raw(a, b) == pytest.approx(
        np.sqrt(2.0 - 2.0 * np.sqrt(f)), abs=1e-10
    )


def test_separable_search_respects_bound():
    p = ModelParams(coupling_j=0.3, anisotropy_gamma=1.0, field_b=0.5, noise_alpha=0.05)
    tr = make_trajectory(p, 2 * np.pi, 7)
    for k in range(len(tr)):
        state = tr.states[k]
        c = concurrence_closed_form(p, tr.etas[k])
        best = separable_fidelity_search(state, n_samples=300, seed=0)
        assert best <= fidelity_of_separability(min(c, 1.0)) + 1e-6


def test_separable_search_reaches_separable_states():
    # near-separable target: fidelity should approach 1
    p = ModelParams(coupling_j=0.3, anisotropy_gamma=1.0, field_b=0.5, noise_alpha=0.1)
    t = t_of_eta(0.01, p.coupling_j)  # C ~ 0.02
    state = propagate_analytic(p, t)
    best = separable_fidelity_search(state, n_samples=300, seed=0)
    assert best > 0.99


def test_separable_search_deterministic_and_monotonic_in_samples():
    p = ModelParams(coupling_j=0.3, anisotropy_gamma=1.0, field_b=0.5, noise_alpha=0.05)
    state = propagate_analytic(p, 1.7)
    a = separable_fidelity_search(state, n_samples=200, seed=5)
    b = separable_fidelity_search(state, n_samples=200, seed=5)
    assert a == b
    bigger = separable_fidelity_search(state, n_samples=400, seed=5)
    assert bigger >= a - 1e-15  # a prefix of the same sample stream


def test_sample_geometry_table_consistency():
    p = ModelParams(coupling_j=0.5, noise_alpha=0.05)
    etas = np.linspace(0.0, 2 * np.pi, 41)
    tab = sample_geometry(p, etas)
    assert np.abs(tab.concurrence - concurrence_closed_form(p, etas)).max() < 1e-15
    assert np.abs(tab.hs_speed - 4 * 0.05 * 0.5 * tab.hs_rate).max() < 1e-14
    assert np.abs(
        tab.bures_length - bures_length_vs_concurrence(tab.concurrence)
    ).max() < 1e-15
