import numpy as np
import pytest

from xxzgeom import (
    Convention,
    ModelParams,
    build_hamiltonian,
    eta_of_t,
    spectrum,
    t_of_eta,
)


def test_hamiltonian_matrix():
    p = ModelParams(coupling_j=0.3, anisotropy_gamma=1.0, field_b=0.5)
    h = build_hamiltonian(p)
    expected = np.array(
        [
            [2.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.6, 0.0],
            [0.0, 0.6, -1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
        ]
    )
    assert np.allclose(h, expected, atol=1e-14)
    assert np.allclose(h, h.conj().T)


def test_spectrum_energies():
    p = ModelParams(coupling_j=0.3, anisotropy_gamma=1.0, field_b=0.5)
    s = spectrum(p)
    assert np.allclose(s.energies, [2.0, -0.4, -1.6, 0.0], atol=1e-14)


def test_spectrum_diagonalizes_hamiltonian():
    rng = np.random.default_rng(23)
    for _ in range(20):
        p = ModelParams(
            coupling_j=float(rng.uniform(0.05, 2.0)),
            anisotropy_gamma=float(rng.uniform(-2.0, 2.0)),
            field_b=float(rng.uniform(-2.0, 2.0)),
        )
        h = build_hamiltonian(p)
        s = spectrum(p)
        for k in range(4):
            v = s.states[:, k]
            assert np.linalg.norm(h @ v - s.energies[k] * v) < 1e-12
        assert np.allclose(s.states.conj().T @ s.states, np.eye(4), atol=1e-14)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(coupling_j=0.0)
    with pytest.raises(ValueError):
        ModelParams(coupling_j=-0.3)
    with pytest.raises(ValueError):
        ModelParams(coupling_j=0.3, noise_alpha=-0.1)


def test_convention_values():
    assert Convention("paper") is Convention.PAPER
    assert Convention("literal") is Convention.LITERAL
    p = ModelParams(coupling_j=0.3)
    assert p.convention is Convention.PAPER


def test_eta_time_round_trip():
    assert eta_of_t(2.5, 0.3) == pytest.approx(1.5)
    assert t_of_eta(1.5, 0.3) == pytest.approx(2.5)
    assert t_of_eta(eta_of_t(0.77, 0.41), 0.41) == pytest.approx(0.77, abs=1e-15)
