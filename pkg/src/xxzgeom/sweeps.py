"""Row builders behind the scan, evolve, and geomphase outputs.

Each builder returns fully formatted CSV rows so the command layer and
the figure writer share one code path and stay byte-for-byte
reproducible.
"""

from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import ConfigError, SweepSpec
from .dynamics import Method, Trajectory, make_trajectory, purity
from .geometry import sample_geometry
from .geomphase import (
    half_grid,
    half_grid_indices,
    phase_profile_totals,
    tong_phase_profile,
    wrap_angle,
)
from .model import ModelParams
from .output import EVOLVE_HEADER, PHASE_HEADER, SCAN_HEADER, fmt, fmt_bool

#: per-row grid-halving agreement required to call a phase sample converged
PHASE_ROW_TOL = 1e-6

_GEOMETRY_TOKENS = frozenset({"C", "LHS", "VHS", "F", "LB", "VB"})


def worker_count(n_cells: int) -> int:
    """Worker cap for per-alpha cells; XXZGEOM_THREADS overrides."""
    raw = os.environ.get("XXZGEOM_THREADS", "").strip()
    if raw:
        try:
            limit = int(raw)
        except ValueError:
            limit = 0
        if limit < 1:
            raise ConfigError(
                f"XXZGEOM_THREADS must be a positive integer, got {raw!r}"
            )
    else:
        limit = os.cpu_count() or 1
    return max(1, min(limit, n_cells))


def _param_fields(eta: float, params: ModelParams) -> list[str]:
    return [
        fmt(eta),
        fmt(params.noise_alpha),
        fmt(params.coupling_j),
        fmt(params.anisotropy_gamma),
        fmt(params.field_b),
    ]


def _scan_cell(spec: SweepSpec, alpha: float) -> list[list[str]]:
    params = dataclasses.replace(spec.params_base, noise_alpha=alpha)
    etas = np.linspace(0.0, spec.eta_max, spec.n_points)
    columns: dict[str, np.ndarray] = {}
    if spec.quantities & _GEOMETRY_TOKENS:
        table = sample_geometry(params, etas)
        if "C" in spec.quantities:
            columns["C"] = table.concurrence
        if "LHS" in spec.quantities:
            columns["L_HS"] = table.hs_rate
        if "VHS" in spec.quantities:
            columns["V_HS"] = table.hs_speed
        if "F" in spec.quantities:
            columns["F_sep"] = table.fidelity_sep
        if "LB" in spec.quantities:
            columns["L_B"] = table.bures_length
        if "VB" in spec.quantities:
            columns["V_B"] = table.bures_speed
    if "PHI" in spec.quantities:
        traj = make_trajectory(
            params, spec.eta_max, spec.n_points, method=spec.method
        )
        columns["Phi_g"] = tong_phase_profile(traj)
    rows = []
    for m, eta in enumerate(etas):
        row = _param_fields(float(eta), params)
        for col in SCAN_HEADER[5:]:
            arr = columns.get(col)
            row.append("" if arr is None else fmt(arr[m]))
        rows.append(row)
    return rows


def scan_rows(spec: SweepSpec) -> list[list[str]]:
    """All rows of a scan, alpha cells in the given order."""
    alphas = spec.alphas
    workers = worker_count(len(alphas))
    if workers == 1 or len(alphas) == 1:
        cells = [_scan_cell(spec, a) for a in alphas]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda a: _scan_cell(spec, a), alphas))
    rows: list[list[str]] = []
    for cell in cells:
        rows.extend(cell)
    return rows


def evolve_rows(spec: SweepSpec) -> list[list[str]]:
    """Evolution of the down-up state for a single alpha."""
    if len(spec.alphas) != 1:
        raise ConfigError(
            f"evolve takes exactly one alpha, got {len(spec.alphas)}"
        )
    params = dataclasses.replace(spec.params_base, noise_alpha=spec.alphas[0])
    traj = make_trajectory(
        params, spec.eta_max, spec.n_points, method=spec.method
    )
    pur = np.array([purity(s) for s in traj.states])
    rows = []
    for m, eta in enumerate(traj.etas):
        d = traj.states[m]
        rows.append(
            _param_fields(float(eta), params)
            + [
                fmt(d[1, 1].real),
                fmt(d[2, 2].real),
                fmt(d[1, 2].real),
                fmt(d[1, 2].imag),
                fmt(pur[m]),
            ]
        )
    assert len(rows[0]) == len(EVOLVE_HEADER)
    return rows


def _row_convergence(traj: Trajectory) -> np.ndarray:
    """Per-row grid-halving agreement flags.

    Compares the complex phase functional, not its angle: at the zeros of
    the overlap the angle is ill conditioned while the functional itself
    still converges.  Rows absent from the half grid inherit the worse of
    their two neighbours.
    """
    totals_full, amps = phase_profile_totals(traj)
    totals_half, _ = phase_profile_totals(half_grid(traj))
    idx = half_grid_indices(traj.etas.size)
    err = np.abs(totals_full[idx] - totals_half) / np.clip(
        amps[idx], 1e-30, None
    )
    ok_half = err < PHASE_ROW_TOL
    ok = np.zeros(traj.etas.size, dtype=bool)
    pos = np.full(traj.etas.size, -1, dtype=int)
    pos[idx] = np.arange(idx.size)
    for m in range(traj.etas.size):
        if pos[m] >= 0:
            ok[m] = ok_half[pos[m]]
        else:
            left = ok_half[pos[m - 1]] if pos[m - 1] >= 0 else True
            j = m + 1
            right = ok_half[pos[j]] if j < traj.etas.size and pos[j] >= 0 else True
            ok[m] = left and right
    return ok


def phase_rows(
    params: ModelParams,
    eta_max: float,
    n_points: int,
    method: Method = Method.ANALYTIC,
    closed_form: bool = False,
) -> list[list[str]]:
    """Geometric-phase profile rows with per-row convergence flags."""
    traj = make_trajectory(params, eta_max, n_points, method=method)
    phases = tong_phase_profile(traj)
    ok = _row_convergence(traj)
    if closed_form:
        from .verify import variant_phase

        ref = np.array(
            [
                variant_phase(params.coupling_j, params.noise_alpha, e)
                for e in traj.etas
            ]
        )
        deltas = wrap_angle(phases - ref)
    rows = []
    for m, eta in enumerate(traj.etas):
        row = [fmt(float(eta)), fmt(phases[m])]
        if closed_form:
            row += [fmt(ref[m]), fmt(deltas[m])]
        else:
            row += ["", ""]
        row.append(fmt_bool(bool(ok[m])))
        rows.append(row)
    assert len(rows[0]) == len(PHASE_HEADER)
    return rows
