"""Two-qubit entanglement via the spin-flip construction.

The concurrence of a state D is max(0, l1 - l2 - l3 - l4), where the l_k
are the decreasingly ordered square roots of the eigenvalues of
D (sy sy) D* (sy sy).  With D = L L+ (columns of L scaled by sqrt of the
populations) those roots equal the singular values of L^T (sy sy) L, so
they come out of one SVD with no eigenvalue squaring; the naive route
through sqrt(D) loses half the digits on rank-deficient states.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import backend
from .linalg import PAULI_Y
from .model import ModelParams

YY = np.kron(PAULI_Y, PAULI_Y).real.astype(complex)

_EIG_FLOOR = -1e-8
#: populations below this fraction of the largest are solver noise
_POP_FLOOR = 1e-14


def spin_flip(state: np.ndarray) -> np.ndarray:
    """Dtilde = (sy sy) D* (sy sy)."""
    m = np.asarray(state, dtype=complex)
    return YY @ m.conj() @ YY


@dataclasses.dataclass(frozen=True)
class ConcurrenceBreakdown:
    """Ordered spin-flip eigenvalue roots and the concurrence they give."""

    lambdas: np.ndarray
    value: float


def _root_spectra(states: np.ndarray) -> np.ndarray:
    """Decreasing spin-flip roots for a (n, 4, 4) stack."""
    w, v = backend.eigh_many(states)
    if float(w.min()) < _EIG_FLOOR:
        raise ValueError(
            f"state has eigenvalue {w.min():.3e}; "
            "the input is not a physical state"
        )
    w = np.clip(w, 0.0, None)
    w = np.where(w < w.max(axis=1, keepdims=True) * _POP_FLOOR, 0.0, w)
    factor = v * np.sqrt(w)[:, None, :]
    y = np.swapaxes(factor, 1, 2) @ YY @ factor
    return np.linalg.svd(y, compute_uv=False)


def concurrence_wootters(state: np.ndarray) -> ConcurrenceBreakdown:
    """Concurrence of one 4x4 density matrix, with the full root spectrum."""
    m = np.asarray(state, dtype=complex)
    lam = _root_spectra(m[None])[0]
    value = max(0.0, float(2.0 * lam[0] - lam.sum()))
    return ConcurrenceBreakdown(lambdas=lam, value=value)


def concurrence_many(states: np.ndarray) -> np.ndarray:
    """Concurrence for a (n, 4, 4) stack of states."""
    lam = _root_spectra(np.asarray(states, dtype=complex))
    return np.maximum(0.0, 2.0 * lam[:, 0] - lam.sum(axis=1))


def concurrence_closed_form(params: ModelParams, eta: np.ndarray | float):
    """C(eta) = exp(-4 alpha J eta) |sin 2 eta| for the down-up evolution."""
    eta = np.asarray(eta, dtype=float)
    decay = np.exp(-4.0 * params.noise_alpha * params.coupling_j * eta)
    out = decay * np.abs(np.sin(2.0 * eta))
    return out if out.ndim else float(out)
