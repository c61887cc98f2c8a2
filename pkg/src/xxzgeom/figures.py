"""Deterministic CSV data sets behind the standard figure panels.

Every panel is written under the scan header; columns a panel does not
sweep stay empty so the files all parse the same way.  Plot rendering is
left to the consumer.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .config import SweepSpec
from .dynamics import Method
from .geometry import (
    bures_length_vs_concurrence,
    bures_speed_vs_concurrence,
    fidelity_of_separability,
    hs_rate_closed_form,
    hs_rate_vs_concurrence,
    hs_speed_vs_concurrence,
    sample_geometry,
)
from .model import ModelParams
from .output import SCAN_HEADER, fmt, render_csv, write_text
from .sweeps import scan_rows

N_ETA = 2001
N_ETA_PHASE = 4001
N_C = 1001
N_ALPHA = 1001

_COL = {name: i for i, name in enumerate(SCAN_HEADER)}

FIGURE_FILES = (
    "fig3.csv",
    "fig4a.csv",
    "fig4b.csv",
    "fig6a.csv",
    "fig6b.csv",
    "fig7a.csv",
    "fig7b.csv",
    "fig8a.csv",
    "fig8b.csv",
    "fig8-speeds.csv",
    "fig9.csv",
)


def _rows(n: int, **columns) -> list[list[str]]:
    """Rows with the named scan columns filled, the rest empty.

    Scalar values repeat down the column; arrays must have length n.
    """
    filled = {}
    for name, value in columns.items():
        arr = np.asarray(value, dtype=float)
        filled[_COL[name]] = np.broadcast_to(arr, (n,))
    rows = []
    for m in range(n):
        row = [""] * len(SCAN_HEADER)
        for i, arr in filled.items():
            row[i] = fmt(arr[m])
        rows.append(row)
    return rows


def _eta_scan_csv(
    j: float, alphas: tuple[float, ...], quantity: str, n_points: int
) -> str:
    spec = SweepSpec(
        params_base=ModelParams(coupling_j=j),
        alphas=alphas,
        eta_max=2.0 * math.pi,
        n_points=n_points,
        quantities=frozenset({quantity}),
        method=Method.ANALYTIC,
        seed=0,
    )
    return render_csv(SCAN_HEADER, scan_rows(spec))


def _fig3() -> str:
    return _eta_scan_csv(0.3, (0.0, 0.01, 0.03, 0.06, 0.1), "C", N_ETA)


def _fig4a() -> str:
    params = ModelParams(coupling_j=0.3, noise_alpha=0.08)
    eta = math.pi / 6.0
    c = np.linspace(0.0, 1.0, N_C)
    rows = _rows(
        N_C,
        eta=eta,
        alpha=params.noise_alpha,
        J=params.coupling_j,
        gamma=params.anisotropy_gamma,
        B=params.field_b,
        C=c,
        L_HS=hs_rate_vs_concurrence(params, c, eta),
    )
    return render_csv(SCAN_HEADER, rows)


def _alpha_scan_csv(j: float, eta: float, column: str, func) -> str:
    alphas = np.linspace(0.0, 1.0, N_ALPHA)
    values = np.array(
        [
            func(ModelParams(coupling_j=j, noise_alpha=float(a)), eta)
            for a in alphas
        ]
    )
    rows = _rows(
        N_ALPHA,
        eta=eta,
        alpha=alphas,
        J=j,
        gamma=0.0,
        B=0.0,
        **{column: values},
    )
    return render_csv(SCAN_HEADER, rows)


def _fig4b() -> str:
    return _alpha_scan_csv(0.3, 1.5, "L_HS", hs_rate_closed_form)


def _fig6a() -> str:
    c = np.linspace(0.0, 1.0, N_C)
    rows = _rows(N_C, C=c, F_sep=fidelity_of_separability(c))
    return render_csv(SCAN_HEADER, rows)


def _fig6b() -> str:
    def f_sep(params: ModelParams, eta: float) -> float:
        table = sample_geometry(params, np.array([eta]))
        return float(table.fidelity_sep[0])

    return _alpha_scan_csv(0.8, 1.0, "F_sep", f_sep)


def _fig7a() -> str:
    c = np.linspace(0.0, 1.0, N_C)
    rows = _rows(N_C, C=c, L_B=bures_length_vs_concurrence(c))
    return render_csv(SCAN_HEADER, rows)


def _fig7b() -> str:
    def l_b(params: ModelParams, eta: float) -> float:
        table = sample_geometry(params, np.array([eta]))
        return float(table.bures_length[0])

    return _alpha_scan_csv(0.8, 16.0, "L_B", l_b)


def _fig8a() -> str:
    return _eta_scan_csv(0.5, (0.01, 0.05, 0.1), "VHS", N_ETA)


def _fig8b() -> str:
    return _eta_scan_csv(0.5, (0.01, 0.05, 0.1), "VB", N_ETA)


def _fig8_speeds() -> str:
    params = ModelParams(coupling_j=0.65, noise_alpha=0.2)
    eta = math.pi / 4.0
    c = np.linspace(0.0, 1.0, N_C)
    rows = _rows(
        N_C,
        eta=eta,
        alpha=params.noise_alpha,
        J=params.coupling_j,
        gamma=params.anisotropy_gamma,
        B=params.field_b,
        C=c,
        V_HS=hs_speed_vs_concurrence(params, c, eta),
        V_B=bures_speed_vs_concurrence(c),
    )
    return render_csv(SCAN_HEADER, rows)


def _fig9() -> str:
    return _eta_scan_csv(0.09, (0.0, 0.01, 0.06, 0.1), "PHI", N_ETA_PHASE)


_BUILDERS = {
    "fig3.csv": _fig3,
    "fig4a.csv": _fig4a,
    "fig4b.csv": _fig4b,
    "fig6a.csv": _fig6a,
    "fig6b.csv": _fig6b,
    "fig7a.csv": _fig7a,
    "fig7b.csv": _fig7b,
    "fig8a.csv": _fig8a,
    "fig8b.csv": _fig8b,
    "fig8-speeds.csv": _fig8_speeds,
    "fig9.csv": _fig9,
}


def write_figures(out_dir: str) -> list[str]:
    """Write every panel CSV into out_dir, returning the file names."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for name in FIGURE_FILES:
        text = _BUILDERS[name]()
        write_text(text, os.path.join(out_dir, name))
        written.append(name)
    return written
