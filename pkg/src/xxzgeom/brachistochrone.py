"""Fastest passage to the maximally decohered plateau.

Along the down-up trajectory the Hilbert-Schmidt speed is bounded by its
eta = 0 value and the remaining path length at full entanglement is
fixed, so the ratio gives the shortest time in which the decoherence can
play out: t_min = 1 / (4 J alpha).  The state reached at that moment and
the master-equation residual of the route leading there are exposed for
cross-checking.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .dynamics import (
    DensityMatrix,
    _propagate_analytic_many,
    decoherence_rate,
    evolved_state_closed_form,
    initial_state,
)
from .entanglement import concurrence_closed_form
from .model import ModelParams, build_hamiltonian


def v_hs_max(params: ModelParams) -> float:
    """Largest Hilbert-Schmidt decoherence speed on the trajectory."""
    j = params.coupling_j
    a = params.noise_alpha
    return 8.0 * math.sqrt(2.0) * j * j * a * math.sqrt(4.0 * a * a * j * j + 1.0)


def l_hs_at_c1(params: ModelParams) -> float:
    """Hilbert-Schmidt rate at full entanglement, the length scale of the run."""
    j = params.coupling_j
    a = params.noise_alpha
    return 2.0 * math.sqrt(2.0) * j * math.sqrt(4.0 * a * a * j * j + 1.0)


def t_min(params: ModelParams) -> float:
    """Shortest decoherence time l / v = 1 / (4 J alpha)."""
    if params.noise_alpha == 0.0:
        raise ValueError(
            "t_min = 1 / (4 J alpha) diverges at alpha = 0; "
            "there is no decoherence to race"
        )
    return 1.0 / (4.0 * params.coupling_j * params.noise_alpha)


def optimal_state(params: ModelParams) -> DensityMatrix:
    """State reached at t_min, i.e. the closed form at eta = 1 / (2 alpha)."""
    return evolved_state_closed_form(params, t_min(params))


def milburn_residual(params: ModelParams, t: float, delta: float = 1e-6) -> float:
    """How well the propagated state satisfies the master equation at time t.

    Central-difference dD/dt against -i[H, D] - kappa [H, [H, D]], as a
    Frobenius norm.
    """
    t = float(t)
    d0 = initial_state().matrix
    stack = _propagate_analytic_many(params, np.array([t - delta, t, t + delta]), d0)
    lhs = (stack[2] - stack[0]) / (2.0 * delta)
    h = build_hamiltonian(params)
    kappa = decoherence_rate(params)
    c1 = h @ stack[1] - stack[1] @ h
    rhs = -1j * c1 - kappa * (h @ c1 - c1 @ h)
    return float(np.linalg.norm(lhs - rhs))


@dataclasses.dataclass(frozen=True)
class BrachistochroneResult:
    v_max: float
    length: float
    t_min: float
    eta_min: float
    state: DensityMatrix
    concurrence: float
    residual: float


def solve(params: ModelParams) -> BrachistochroneResult:
    """Assemble the full shortest-time summary for one parameter point."""
    tm = t_min(params)
    eta = 2.0 * params.coupling_j * tm
    state = optimal_state(params)
    return BrachistochroneResult(
        v_max=v_hs_max(params),
        length=l_hs_at_c1(params),
        t_min=tm,
        eta_min=eta,
        state=state,
        concurrence=float(concurrence_closed_form(params, eta)),
        residual=milburn_residual(params, tm),
    )
