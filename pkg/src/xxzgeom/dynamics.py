"""State evolution under intrinsic decoherence.

The master equation is

    dD/dt = -i [H, D] - kappa [H, [H, D]],

which in the Hamiltonian eigenbasis damps the (m, n) coherence at rate
kappa (E_m - E_n)^2 while it rotates at E_m - E_n.  Three routes to D(t)
are kept deliberately separate so they can check each other: the spectral
propagator, the closed form for the standard initial state, and brute
RK4 integration of the master equation itself.
"""

from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np

from . import backend
from .model import Convention, ModelParams, Spectrum, build_hamiltonian, spectrum

TRACE_TOL = 1e-10
HERM_TOL = 1e-10
EIG_FLOOR = -1e-9

#: index of the down-up product state in the computational basis
INITIAL_INDEX = 2


def decoherence_rate(params: ModelParams) -> float:
    """Milburn rate kappa implied by alpha under the chosen convention."""
    if params.convention is Convention.PAPER:
        return 0.5 * params.noise_alpha
    if params.noise_alpha == 0.0:
        raise ValueError(
            "alpha = 0 gives a singular rate kappa = 1/(2 alpha) under the "
            "literal convention; use the paper convention for the unitary limit"
        )
    return 0.5 / params.noise_alpha


@dataclasses.dataclass(frozen=True)
class DensityMatrix:
    """Validated 4x4 density matrix.

    Construction rejects anything visibly non-Hermitian, non-unit-trace or
    with an eigenvalue below -1e-9; round-off slightly below zero is
    accepted but never repaired.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        herm = float(np.linalg.norm(m - m.conj().T))
        if herm > HERM_TOL:
            raise ValueError(f"density matrix not Hermitian: defect {herm:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr:.12f} is not 1")
        w = np.linalg.eigvalsh(m)
        if w[0] < EIG_FLOOR:
            raise ValueError(
                f"density matrix has negative eigenvalue {w[0]:.3e}"
            )
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None) -> np.ndarray:
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    @property
    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)


def initial_state() -> DensityMatrix:
    """The down-up product state used throughout: D(0) = |du><du|."""
    m = np.zeros((4, 4), dtype=complex)
    m[INITIAL_INDEX, INITIAL_INDEX] = 1.0
    return DensityMatrix(m)


def _coerce(d0: DensityMatrix | np.ndarray | None) -> np.ndarray:
    if d0 is None:
        return initial_state().matrix
    if isinstance(d0, DensityMatrix):
        return d0.matrix
    return DensityMatrix(np.asarray(d0, dtype=complex)).matrix


class Method(str, enum.Enum):
    ANALYTIC = "analytic"
    CLOSED = "closed"
    RK4 = "rk4"


def _phase_factors(spec: Spectrum, kappa: float, times: np.ndarray) -> np.ndarray:
    # (n_t, 4, 4) damping-and-rotation factors for the eigenbasis coherences
    gaps = spec.energies[:, None] - spec.energies[None, :]
    rates = 1j * gaps + kappa * gaps * gaps
    return np.exp(-rates[None, :, :] * times[:, None, None])


def propagate_analytic(
    params: ModelParams,
    t: float,
    d0: DensityMatrix | np.ndarray | None = None,
) -> DensityMatrix:
    """Spectral-propagator route, exact for any initial state."""
    d = _propagate_analytic_many(params, np.array([float(t)]), _coerce(d0))[0]
    return DensityMatrix(d)


def _propagate_analytic_many(
    params: ModelParams, times: np.ndarray, d0: np.ndarray
) -> np.ndarray:
    spec = spectrum(params)
    kappa = decoherence_rate(params)
    u = spec.states
    dtilde = u.conj().T @ d0 @ u
    phases = _phase_factors(spec, kappa, times)
    evolved = dtilde[None, :, :] * phases
    out = np.einsum("ab,nbc,dc->nad", u, evolved, u.conj(), optimize=True)
    return 0.5 * (out + np.conj(np.swapaxes(out, -1, -2)))


def closed_form_elements(params: ModelParams, eta: np.ndarray | float):
    """Populations and coherence of the down-up evolution as functions of eta.

    Returns ``(u22, u33, u23)`` for the up-down / down-up block; everything
    else is exactly zero.  Written in the paper rate convention kappa =
    alpha/2 regardless of ``params.convention``, which is what makes the
    literal convention visibly disagree with the propagators.
    """
    eta = np.asarray(eta, dtype=float)
    decay = np.exp(-4.0 * params.noise_alpha * params.coupling_j * eta)
    c = np.cos(2.0 * eta)
    s = np.sin(2.0 * eta)
    u22 = 0.5 * (1.0 - decay * c)
    u33 = 0.5 * (1.0 + decay * c)
    u23 = -0.5j * decay * s
    return u22, u33, u23


def evolved_state_closed_form(params: ModelParams, t: float) -> DensityMatrix:
    """Closed-form D(t) for the down-up initial state."""
    eta = 2.0 * params.coupling_j * float(t)
    u22, u33, u23 = closed_form_elements(params, eta)
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = u22
    m[2, 2] = u33
    m[1, 2] = u23
    m[2, 1] = np.conj(u23)
    return DensityMatrix(m)


def _closed_form_many(params: ModelParams, etas: np.ndarray) -> np.ndarray:
    u22, u33, u23 = closed_form_elements(params, etas)
    out = np.zeros((etas.size, 4, 4), dtype=complex)
    out[:, 1, 1] = u22
    out[:, 2, 2] = u33
    out[:, 1, 2] = u23
    out[:, 2, 1] = np.conj(u23)
    return out


def _rk4_min_steps(params: ModelParams, t_total: float) -> int:
    # explicit RK4 goes unstable once the fastest damping rate outruns the
    # step; kappa gap^2 dt < 0.5 keeps a healthy margin
    spec = spectrum(params)
    kappa = decoherence_rate(params)
    gap = float(spec.energies.max() - spec.energies.min())
    return int(math.floor(2.0 * kappa * gap * gap * t_total)) + 1


def propagate_rk4(
    params: ModelParams,
    t: float,
    d0: DensityMatrix | np.ndarray | None = None,
    n_steps: int = 20000,
) -> DensityMatrix:
    """Direct integration of the master equation; the slow reference route."""
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0.0:
        return DensityMatrix(_coerce(d0))
    min_steps = _rk4_min_steps(params, t)
    if n_steps < min_steps:
        raise ValueError(
            f"n_steps = {n_steps} is unstable for these parameters; "
            f"need at least {min_steps}"
        )
    h = build_hamiltonian(params)
    kappa = decoherence_rate(params)
    snaps = backend.rk4_milburn(h, kappa, _coerce(d0), t, n_steps, 1)
    return DensityMatrix(snaps[-1])


@dataclasses.dataclass(frozen=True)
class Trajectory:
    """Evolution sampled on a uniform eta grid including both endpoints."""

    params: ModelParams
    etas: np.ndarray
    times: np.ndarray
    states: np.ndarray
    method: Method

    def __len__(self) -> int:
        return int(self.etas.size)


def _validate_stack(states: np.ndarray) -> None:
    herm = float(np.abs(states - np.conj(np.swapaxes(states, 1, 2))).max())
    if herm > HERM_TOL:
        raise ValueError(f"trajectory left the Hermitian manifold: defect {herm:.3e}")
    traces = np.einsum("nii->n", states)
    worst = float(np.abs(traces - 1.0).max())
    if worst > TRACE_TOL:
        raise ValueError(f"trajectory trace drifted by {worst:.3e}")
    w, _ = backend.eigh_many(states, vectors=False)
    lo = float(w.min())
    if lo < EIG_FLOOR:
        raise ValueError(f"trajectory state has negative eigenvalue {lo:.3e}")


def make_trajectory(
    params: ModelParams,
    eta_max: float,
    n_points: int,
    method: Method = Method.ANALYTIC,
    d0: DensityMatrix | np.ndarray | None = None,
    rk4_steps: int = 20000,
) -> Trajectory:
    """Sample D on n_points uniformly spaced eta values in [0, eta_max]."""
    method = Method(method)
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if eta_max <= 0:
        raise ValueError("eta_max must be positive")
    etas = np.linspace(0.0, eta_max, n_points)
    times = etas / (2.0 * params.coupling_j)

    if method is Method.CLOSED:
        if d0 is not None:
            raise ValueError(
                "the closed form is specific to the down-up initial state; "
                "pass d0=None or use the analytic method"
            )
        states = _closed_form_many(params, etas)
    elif method is Method.ANALYTIC:
        states = _propagate_analytic_many(params, times, _coerce(d0))
    else:
        n_save = n_points - 1
        n_steps = max(rk4_steps, _rk4_min_steps(params, times[-1]))
        n_steps = ((n_steps + n_save - 1) // n_save) * n_save
        h = build_hamiltonian(params)
        kappa = decoherence_rate(params)
        states = backend.rk4_milburn(h, kappa, _coerce(d0), times[-1], n_steps, n_save)

    _validate_stack(states)
    return Trajectory(params=params, etas=etas, times=times, states=states, method=method)


def purity(state: DensityMatrix | np.ndarray) -> float:
    m = np.asarray(state, dtype=complex)
    return float(np.vdot(m, m).real)


def block_eigensystem(state: DensityMatrix | np.ndarray):
    """Eigenpairs of a state supported on the up-down / down-up block.

    Returns ``(values, vectors)`` with values ascending and the two
    eigenvectors embedded back into the 4-dimensional basis as columns.
    Raises when the state leaks outside the block.
    """
    m = np.asarray(state, dtype=complex)
    mask = np.ones((4, 4), dtype=bool)
    mask[1:3, 1:3] = False
    leak = float(np.abs(m[mask]).max())
    if leak > 1e-10:
        raise ValueError(f"state has weight {leak:.3e} outside the central block")
    from .linalg import eig_hermitian

    eig = eig_hermitian(m[1:3, 1:3])
    vecs = np.zeros((4, 2), dtype=complex)
    vecs[1:3, :] = eig.vectors
    return eig.values, vecs
