"""Hilbert-Schmidt and Bures geometry of the evolving state.

Two families live here.  Matrix-level tools (Uhlmann fidelity, distances,
a separable-state fidelity search) work on explicit density matrices and
serve as oracles.  Closed-form profiles express the same quantities along
the down-up trajectory, where everything reduces to functions of eta or
of the concurrence.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import backend
from .dynamics import _propagate_analytic_many, initial_state
from .entanglement import concurrence_closed_form
from .linalg import hs_norm, sqrt_psd
from .model import ModelParams, t_of_eta

#: Bures distance between a maximally entangled state and the separable set,
#: used to normalize lengths to [0, 1]
BURES_NORM = math.sqrt(2.0 - math.sqrt(2.0))


def hs_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt distance |a - b|_2."""
    return hs_norm(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))


def hs_rate_closed_form(params: ModelParams, eta: np.ndarray | float):
    """|dD/dt| along the down-up trajectory.

    Equals 2 sqrt(2) exp(-4 alpha J eta) sqrt(J^2 (4 alpha^2 J^2 + 1)).
    """
    eta = np.asarray(eta, dtype=float)
    j = params.coupling_j
    a = params.noise_alpha
    decay = np.exp(-4.0 * a * j * eta)
    out = 2.0 * math.sqrt(2.0) * decay * math.sqrt(j * j * (4.0 * a * a * j * j + 1.0))
    return out if np.ndim(out) else float(out)


def hs_rate_numeric(params: ModelParams, eta: float, delta: float = 1e-6) -> float:
    """Central-difference |dD/dt| from the spectral propagator."""
    t = t_of_eta(float(eta), params.coupling_j)
    d0 = initial_state().matrix
    pair = _propagate_analytic_many(params, np.array([t - delta, t + delta]), d0)
    return hs_norm(pair[1] - pair[0]) / (2.0 * delta)


def hs_speed_closed_form(params: ModelParams, eta: np.ndarray | float):
    """Decoherence speed 4 alpha J |dD/dt| along the trajectory."""
    return 4.0 * params.noise_alpha * params.coupling_j * hs_rate_closed_form(params, eta)


def _sin2_factor(eta: float) -> float:
    s = abs(math.sin(2.0 * eta))
    if s < 1e-12:
        raise ValueError(
            f"eta = {eta} is too close to a multiple of pi/2; "
            "the concurrence parametrization degenerates there"
        )
    return s


def hs_rate_vs_concurrence(params: ModelParams, c: np.ndarray | float, eta: float):
    """|dD/dt| re-expressed through the concurrence at fixed eta.

    Uses exp(-4 alpha J eta) = C / |sin 2 eta|, so the rate is linear in C.
    """
    c = np.asarray(c, dtype=float)
    j = params.coupling_j
    a = params.noise_alpha
    s = _sin2_factor(eta)
    out = 2.0 * math.sqrt(2.0) * (c / s) * math.sqrt(j * j * (4.0 * a * a * j * j + 1.0))
    return out if out.ndim else float(out)


def hs_speed_vs_concurrence(params: ModelParams, c: np.ndarray | float, eta: float):
    return 4.0 * params.noise_alpha * params.coupling_j * hs_rate_vs_concurrence(
        params, c, eta
    )


def _psd_factor(m: np.ndarray, neg_tol: float = 1e-8) -> np.ndarray:
    """Factor L with L L^dag = m; eigenvalues below max * 1e-14 go to zero.

    The relative floor keeps rank-deficient inputs exactly rank-deficient,
    so downstream singular values carry no sqrt(roundoff) ghosts.
    """
    w, v = backend.eigh_small(np.asarray(m, dtype=complex))
    if w[0] < -neg_tol:
        raise ValueError(
            f"matrix is not positive semidefinite: lowest eigenvalue {w[0]:.3e}"
        )
    w = np.clip(w, 0.0, None)
    w = np.where(w < w.max() * 1e-14, 0.0, w)
    return v * np.sqrt(w)


def fidelity_uhlmann(a: np.ndarray, b: np.ndarray) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(a) b sqrt(a))]^2, clipped to [0, 1].

    Evaluated as the squared nuclear norm of La^dag Lb with La La^dag = a,
    Lb Lb^dag = b: the nonzero eigenvalues of sqrt(a) b sqrt(a) and of
    Lb^dag a Lb coincide, and the factored form does not push eigensolver
    noise through a square root on rank-deficient states.
    """
    la = _psd_factor(a)
    lb = _psd_factor(b)
    sv = np.linalg.svd(la.conj().T @ lb, compute_uv=False)
    tr = float(sv.sum())
    return float(min(max(tr * tr, 0.0), 1.0))


def fidelity_of_separability(c: np.ndarray | float):
    """Largest fidelity to any separable state: F(C) = (1 + sqrt(1 - C^2)) / 2."""
    c = np.asarray(c, dtype=float)
    if np.any(c < -1e-12) or np.any(c > 1.0 + 1e-12):
        raise ValueError("concurrence must lie in [0, 1]")
    out = 0.5 * (1.0 + np.sqrt(np.clip(1.0 - c * c, 0.0, None)))
    return out if out.ndim else float(out)


def bures_distance_raw(a: np.ndarray, b: np.ndarray) -> float:
    """Unnormalized Bures distance sqrt(2 - 2 sqrt(F))."""
    f = fidelity_uhlmann(a, b)
    return math.sqrt(max(2.0 - 2.0 * math.sqrt(f), 0.0))


def bures_length_vs_concurrence(c: np.ndarray | float):
    """Bures distance to the separable set, normalized to 1 at C = 1."""
    c = np.asarray(c, dtype=float)
    root = np.sqrt(np.clip(1.0 - c * c, 0.0, None))
    out = np.sqrt(np.clip(2.0 - np.sqrt(2.0 + 2.0 * root), 0.0, None)) / BURES_NORM
    return out if out.ndim else float(out)


def bures_speed_vs_concurrence(c: np.ndarray | float):
    """Bures speed sqrt(F(C) / 8) = sqrt(1 + sqrt(1 - C^2)) / 4."""
    c = np.asarray(c, dtype=float)
    root = np.sqrt(np.clip(1.0 - c * c, 0.0, None))
    out = 0.25 * np.sqrt(1.0 + root)
    return out if out.ndim else float(out)


def _bloch_vector(cos_theta: float, phi: float) -> np.ndarray:
    # |q> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> with cos(theta) uniform
    return np.array(
        [
            math.sqrt(0.5 * (1.0 + cos_theta)),
            math.sqrt(0.5 * (1.0 - cos_theta)) * complex(math.cos(phi), math.sin(phi)),
        ],
        dtype=complex,
    )


def separable_fidelity_search(
    state: np.ndarray,
    n_samples: int = 2000,
    seed: int = 0,
) -> float:
    """Best fidelity between ``state`` and sampled separable states.

    Candidate 0 is the dephased diagonal of the target, which is separable
    by construction and anchors the search near its optimum for weakly
    entangled targets.  The random candidates are rank-4 mixtures of
    product states with Bloch vectors uniform on the sphere and Dirichlet
    weights.  Draws happen one sample at a time so that enlarging
    ``n_samples`` only appends candidates.
    """
    m = np.asarray(state, dtype=complex)
    rng = np.random.default_rng(seed)
    sigmas = np.empty((n_samples + 1, 4, 4), dtype=complex)
    sigmas[0] = np.diag(np.diag(m))
    for k in range(n_samples):
        cos_theta = rng.uniform(-1.0, 1.0, size=(4, 2))
        phi = rng.uniform(0.0, 2.0 * math.pi, size=(4, 2))
        weights = rng.dirichlet(np.ones(4))
        sigma = np.zeros((4, 4), dtype=complex)
        for i in range(4):
            qa = _bloch_vector(cos_theta[i, 0], phi[i, 0])
            qb = _bloch_vector(cos_theta[i, 1], phi[i, 1])
            prod = np.kron(qa, qb)
            sigma += weights[i] * np.outer(prod, prod.conj())
        sigmas[k + 1] = sigma

    ra = sqrt_psd(m)
    inner = np.einsum("ab,nbc,cd->nad", ra, sigmas, ra, optimize=True)
    inner = 0.5 * (inner + np.conj(np.swapaxes(inner, 1, 2)))
    w, _ = backend.eigh_many(inner, vectors=False)
    traces = np.sqrt(np.clip(w, 0.0, None)).sum(axis=1)
    best = float(np.max(traces * traces))
    return min(best, 1.0)


@dataclasses.dataclass(frozen=True)
class GeometryTable:
    """Closed-form geometry quantities sampled along the down-up trajectory."""

    etas: np.ndarray
    concurrence: np.ndarray
    hs_rate: np.ndarray
    hs_speed: np.ndarray
    fidelity_sep: np.ndarray
    bures_length: np.ndarray
    bures_speed: np.ndarray


def sample_geometry(params: ModelParams, etas: np.ndarray) -> GeometryTable:
    etas = np.asarray(etas, dtype=float)
    c = np.asarray(concurrence_closed_form(params, etas))
    return GeometryTable(
        etas=etas,
        concurrence=c,
        hs_rate=np.asarray(hs_rate_closed_form(params, etas)),
        hs_speed=np.asarray(hs_speed_closed_form(params, etas)),
        fidelity_sep=np.asarray(fidelity_of_separability(c)),
        bures_length=np.asarray(bures_length_vs_concurrence(c)),
        bures_speed=np.asarray(bures_speed_vs_concurrence(c)),
    )
