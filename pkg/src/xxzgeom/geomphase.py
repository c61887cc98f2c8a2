"""Kinematic geometric phase of the decohering state.

For instantaneous eigenpairs p_k(t), |p_k(t)> of D(t) the phase is

    Phi = arg sum_k sqrt(p_k(0) p_k(tau)) <p_k(0)|p_k(tau)>
                  exp(-int_0^tau <p_k|d/dt p_k> dt),

summed over branches that carry population at both ends.  The whole
construction is gauge invariant, so the branch vectors coming out of the
eigensolver are first forced into a parallel-transport gauge: consecutive
vectors overlap real and positive, degenerate clusters are aligned by a
polar (Procrustes) rotation.  A ``phase_seed`` hook scrambles the raw
eigenvector phases before that canonicalization, which is how the gauge
invariance gets tested rather than assumed.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import backend
from .dynamics import Method, Trajectory, make_trajectory
from .model import ModelParams, spectrum

#: populations below this are treated as absent when selecting branches
EPS_P = 1e-12

#: consecutive branch vectors overlapping less than this mean the grid
#: cannot resolve the rotation of the eigenframe
OVERLAP_MIN = 0.9

_DEGENERACY_GAP = 1e-10

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


def wrap_angle(x):
    """Map angles to (-pi, pi]."""
    out = np.arctan2(np.sin(x), np.cos(x))
    return out if np.ndim(out) else float(out)


@dataclasses.dataclass(frozen=True)
class EigenBranch:
    """One continuously tracked eigenbranch of the trajectory."""

    populations: np.ndarray
    vectors: np.ndarray


def _clusters(values: np.ndarray) -> list[list[int]]:
    # chain indices whose eigenvalues sit within the degeneracy gap
    order = np.argsort(values)
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        if values[idx] - values[groups[-1][-1]] < _DEGENERACY_GAP:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return groups


def eigen_branches(
    trajectory: Trajectory, phase_seed: int | None = None
) -> list[EigenBranch]:
    """Track the four eigenbranches of D(t) along the trajectory.

    Branches keep their identity through the greedy overlap assignment;
    within degenerate clusters the new frame is rotated onto the previous
    one, elsewhere each vector is rephased so the consecutive overlap is
    real and positive.  Raises when some overlap falls below OVERLAP_MIN,
    which means the grid is too coarse to follow the eigenframe.
    """
    states = trajectory.states
    n_t = states.shape[0]
    w, v = backend.eigh_many(states)
    w = np.array(w)
    v = np.array(v)

    if phase_seed is not None:
        rng = np.random.default_rng(phase_seed)
        scramble = np.exp(2j * math.pi * rng.random((n_t, 4)))
        v = v * scramble[:, None, :]

    pops = np.empty((n_t, 4))
    vecs = np.empty((n_t, 4, 4), dtype=complex)
    pops[0] = w[0]
    vecs[0] = v[0]

    for i in range(1, n_t):
        prev = vecs[i - 1]
        cand_w = w[i]
        cand_v = v[i]

        overlap = np.abs(prev.conj().T @ cand_v)
        assign = np.full(4, -1)
        taken_rows = np.zeros(4, dtype=bool)
        taken_cols = np.zeros(4, dtype=bool)
        work = overlap.copy()
        for _ in range(4):
            flat = np.argmax(np.where(taken_rows[:, None] | taken_cols[None, :], -1.0, work))
            r, ccol = divmod(int(flat), 4)
            assign[r] = ccol
            taken_rows[r] = True
            taken_cols[ccol] = True

        new_w = cand_w[assign]
        new_v = cand_v[:, assign]

        for group in _clusters(new_w):
            if len(group) == 1:
                k = group[0]
                z = np.vdot(prev[:, k], new_v[:, k])
                if abs(z) > 0:
                    new_v[:, k] *= np.conj(z) / abs(z)
            else:
                cols = np.array(group)
                m = new_v[:, cols].conj().T @ prev[:, cols]
                u_svd, _, vh_svd = np.linalg.svd(m)
                new_v[:, cols] = new_v[:, cols] @ (u_svd @ vh_svd)

        worst = min(abs(np.vdot(prev[:, k], new_v[:, k])) for k in range(4))
        if worst < OVERLAP_MIN:
            raise ValueError(
                f"eigenframe rotated too fast between grid points "
                f"(overlap {worst:.3f} at step {i}); the grid is too coarse"
            )

        pops[i] = new_w
        vecs[i] = new_v

    return [
        EigenBranch(populations=pops[:, k].copy(), vectors=vecs[:, :, k].copy())
        for k in range(4)
    ]


def _connection_integrand(times: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    # <v | dv/dt> by central differences, one-sided at the ends.  For
    # normalized vectors the exact value is purely imaginary, so the real
    # part (an O(h) end-point artifact) is discarded rather than allowed
    # to perturb the branch weights.
    n = times.size
    g = np.empty(n, dtype=complex)
    for i in range(n):
        lo = max(i - 1, 0)
        hi = min(i + 1, n - 1)
        dv = (vectors[hi] - vectors[lo]) / (times[hi] - times[lo])
        g[i] = 1j * np.vdot(vectors[i], dv).imag
    return g


def _cumulative_trapezoid(g: np.ndarray, times: np.ndarray) -> np.ndarray:
    out = np.empty_like(g)
    out[0] = 0.0
    out[1:] = np.cumsum(0.5 * (g[1:] + g[:-1]) * np.diff(times))
    return out


@dataclasses.dataclass(frozen=True)
class GeomPhaseResult:
    """Endpoint phase plus the diagnostics that qualify it."""

    eta_end: float
    phase: float
    magnitude: float
    n_branches_used: int
    grid_halving_error: float
    converged: bool


def _phase_once(
    trajectory: Trajectory, eps_p: float, phase_seed: int | None
) -> tuple[float, float, int]:
    branches = eigen_branches(trajectory, phase_seed=phase_seed)
    total = 0.0 + 0.0j
    used = 0
    for br in branches:
        p0 = float(br.populations[0])
        p1 = float(br.populations[-1])
        if p0 <= eps_p or p1 <= eps_p:
            continue
        used += 1
        overlap = np.vdot(br.vectors[0], br.vectors[-1])
        g = _connection_integrand(trajectory.times, br.vectors)
        conn = _trapezoid(g, trajectory.times)
        total += math.sqrt(p0 * p1) * overlap * np.exp(-conn)
    return float(np.angle(total)), float(abs(total)), used


def half_grid(trajectory: Trajectory) -> Trajectory:
    """Every second grid point, keeping both endpoints."""
    idx = half_grid_indices(trajectory.etas.size)
    return Trajectory(
        params=trajectory.params,
        etas=trajectory.etas[idx],
        times=trajectory.times[idx],
        states=trajectory.states[idx],
        method=trajectory.method,
    )


def half_grid_indices(n: int) -> np.ndarray:
    idx = np.arange(0, n, 2)
    if idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return idx


def tong_phase(
    trajectory: Trajectory,
    eps_p: float = EPS_P,
    phase_seed: int | None = None,
    convergence_tol: float = 1e-6,
) -> GeomPhaseResult:
    """Kinematic phase at the trajectory endpoint, with a grid-halving check."""
    phase, magnitude, used = _phase_once(trajectory, eps_p, phase_seed)
    if used == 0:
        raise ValueError(
            f"no eigenbranch carries population above {eps_p:.1e} at both ends"
        )
    half_phase, _, _ = _phase_once(half_grid(trajectory), eps_p, phase_seed)
    err = abs(wrap_angle(phase - half_phase))
    return GeomPhaseResult(
        eta_end=float(trajectory.etas[-1]),
        phase=phase,
        magnitude=magnitude,
        n_branches_used=used,
        grid_halving_error=err,
        converged=bool(err < convergence_tol),
    )


def phase_profile_totals(
    trajectory: Trajectory, eps_p: float = EPS_P, phase_seed: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Complex phase functional up to every grid point, plus its weight scale.

    Returns ``(totals, amps)``: ``np.angle(totals[m])`` is the phase
    accumulated up to grid point ``m``, and ``amps[m]`` is the sum of the
    branch weights sqrt(p(0) p(eta_m)), the natural magnitude of
    ``totals[m]`` absent interference.  Where ``|totals|`` collapses far
    below ``amps`` the angle is ill conditioned, so convergence checks
    should compare totals, not angles.
    """
    branches = eigen_branches(trajectory, phase_seed=phase_seed)
    n = trajectory.etas.size
    total = np.zeros(n, dtype=complex)
    scale = np.zeros(n)
    for br in branches:
        p0 = float(br.populations[0])
        if p0 <= eps_p:
            continue
        # rows are time, so this is <v_0|v_m> for every m at once
        overlaps = br.vectors @ br.vectors[0].conj()
        g = _connection_integrand(trajectory.times, br.vectors)
        conn = _cumulative_trapezoid(g, trajectory.times)
        amp = np.sqrt(p0 * np.clip(br.populations, 0.0, None))
        total += amp * overlaps * np.exp(-conn)
        scale += amp
    return total, scale


def tong_phase_profile(
    trajectory: Trajectory, eps_p: float = EPS_P, phase_seed: int | None = None
) -> np.ndarray:
    """Phase accumulated up to every grid point, as one array.

    Terms whose endpoint population has dropped below ``eps_p`` fade out
    through the sqrt(p(0) p(eta)) weight, which is also their limit.
    """
    totals, _ = phase_profile_totals(trajectory, eps_p, phase_seed)
    return np.angle(totals)


def chain_phase(trajectory: Trajectory, eps_p: float = EPS_P) -> float:
    """Discrete-overlap route to the same phase.

    Replaces the connection integral by the accumulated phase of the
    product of consecutive overlaps; agrees with ``tong_phase`` up to
    discretization error and serves as an internal cross-check.
    """
    branches = eigen_branches(trajectory)
    total = 0.0 + 0.0j
    for br in branches:
        p0 = float(br.populations[0])
        p1 = float(br.populations[-1])
        if p0 <= eps_p or p1 <= eps_p:
            continue
        steps = np.einsum("ni,ni->n", br.vectors[:-1].conj(), br.vectors[1:])
        chain = np.sum(np.angle(steps))
        overlap = np.vdot(br.vectors[0], br.vectors[-1])
        total += math.sqrt(p0 * p1) * overlap * np.exp(-1j * chain)
    if abs(total) == 0.0:
        raise ValueError("chain phase undefined: total amplitude vanished")
    return float(np.angle(total))


def pure_state_phase_oracle(params: ModelParams, eta_end: float) -> float:
    """Independent pure-state geometric phase for the unitary case.

    Total phase of <psi(0)|psi(tau)> minus the dynamical phase, computed
    straight from the spectrum with no branch tracking.  Only valid at
    alpha = 0 where the state stays pure.
    """
    if params.noise_alpha != 0.0:
        raise ValueError("the pure-state oracle requires alpha = 0")
    spec = spectrum(params)
    tau = eta_end / (2.0 * params.coupling_j)
    psi0 = np.zeros(4, dtype=complex)
    psi0[2] = 1.0
    coeff = spec.states.conj().T @ psi0
    psi_tau = spec.states @ (coeff * np.exp(-1j * spec.energies * tau))
    total = np.vdot(psi0, psi_tau)
    if abs(total) < 1e-9:
        raise ValueError(
            f"total overlap {abs(total):.1e} too small near eta = k pi/2; "
            "the phase is undefined there"
        )
    dynamical = -float(np.sum(np.abs(coeff) ** 2 * spec.energies)) * tau
    return wrap_angle(float(np.angle(total)) - dynamical)


def phase_trajectory(
    params: ModelParams,
    eta_max: float,
    n_points: int = 4001,
    method: Method = Method.ANALYTIC,
) -> Trajectory:
    """Convenience constructor with the denser default grid phases need."""
    return make_trajectory(params, eta_max, n_points, method=method)
