"""Self-verification: every closed form checked against an independent route.

Each check pairs two computations that should agree (or are documented not
to) and reports pass / fail / known-discrepancy.  Known discrepancies are
quantities whose printed closed forms do not reduce to the direct
computation; both values are shown and they never fail the run.  Under
the literal rate convention the checks that compare convention-following
propagators against the fixed closed-form algebra become expected
mismatches and are reported as known discrepancies too.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .brachistochrone import milburn_residual, optimal_state, t_min
from .config import ConfigError
from .dynamics import (
    Method,
    make_trajectory,
    propagate_analytic,
)
from .entanglement import concurrence_closed_form, concurrence_many
from .geometry import (
    bures_length_vs_concurrence,
    bures_speed_vs_concurrence,
    fidelity_of_separability,
    hs_rate_closed_form,
    hs_rate_numeric,
    hs_speed_closed_form,
    separable_fidelity_search,
)
from .geomphase import wrap_angle, pure_state_phase_oracle, tong_phase
from .model import Convention, ModelParams

PASS = "pass"
FAIL = "fail"
KNOWN = "known-discrepancy"


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    measured: float
    expected: float
    tolerance: float
    note: str = ""


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    convention: Convention

    @property
    def exit_ok(self) -> bool:
        return not any(c.status == FAIL for c in self.checks)

    def render(self) -> str:
        lines = []
        for c in self.checks:
            tag = c.status.upper()
            line = (
                f"[{tag}] {c.name}: measured {c.measured:.12g} "
                f"expected {c.expected:.12g} tol {c.tolerance:.3g}"
            )
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
        n_pass = sum(1 for c in self.checks if c.status == PASS)
        n_fail = sum(1 for c in self.checks if c.status == FAIL)
        n_known = len(self.checks) - n_pass - n_fail
        lines.append(
            f"verify: {n_pass} pass, {n_fail} fail, {n_known} known-discrepancy"
        )
        return "\n".join(lines) + "\n"


DEFAULT_TOLS = {
    "route-rk4-analytic": 1e-8,
    "route-closed-analytic": 1e-12,
    "concurrence-closed-wootters": 1e-10,
    "concurrence-peaks": 1e-10,
    "hs-rate-closed-numeric": 1e-5,
    "hs-speed-identity": 1e-12,
    "hs-rate-eta-derivative": 1e-8,
    "bures-endpoints": 1e-12,
    "bures-monotonic": 0.0,
    "bures-speed-identity": 1e-15,
    "separable-search-bound": 1e-6,
    "separable-search-reach": 0.99,
    "gamma-b-invariance": 1e-9,
    "brachistochrone-tmin": 1e-15,
    "brachistochrone-state": 1e-12,
    "brachistochrone-residual": 1e-6,
    "phase-gauge-invariance": 1e-9,
    "phase-grid-convergence": 1e-6,
    "phase-pure-oracle": 1e-6,
    "eigenvalue-formula-probe": 0.0,
    "phase-formula-probe": 0.0,
    "optimal-diagonal-probe": 0.0,
}


def variant_population_plus(j: float, alpha: float, eta: float) -> float:
    """Printed closed-form upper block eigenvalue; diagnostic only.

    Does not reduce to the direct 2x2 eigenvalue except at alpha = 0; the
    verification report shows both.
    """
    rad = 0.5 * (
        1.0
        - math.cos(2.0 * eta)
        + math.exp(6.0 * alpha * j * eta) * (1.0 + math.cos(2.0 * eta))
    )
    return 0.5 * (1.0 + math.exp(-4.0 * alpha * j * eta) * math.sqrt(rad))


def variant_phase_terms(j: float, alpha: float, eta: float) -> dict[str, complex]:
    """Sub-expressions of the printed closed-form phase; diagnostic only.

    Transcribed verbatim, evaluated in complex arithmetic, and never
    repaired; the verification report compares the assembled phase with
    the kinematic computation.
    """
    e6 = math.exp(6.0 * alpha * j * eta)
    cos2 = math.cos(2.0 * eta)
    rad = complex(0.5 * (1.0 - cos2 + e6 * (1.0 + cos2)))
    a_term = 0.5 * (1.0 + math.exp(-4.0 * alpha * j * eta) * np.sqrt(rad))
    b_term = 1j * math.sin(eta) * np.sqrt(rad) + math.exp(
        3.0 * alpha * j * eta
    ) * math.cos(eta)
    e_term = complex(0.5 * e6 * math.cos(eta) ** 2)
    g_term = complex((-4.0 * cos2 + math.cos(4.0 * eta) + 2.0 * e6) / 16.0)
    root = np.sqrt(complex(1.0 + 2.0 * j * eta * (eta / (2.0 * j) + 3.0 * alpha)))
    poly = (
        -4.0 * eta / j
        - 12.0 * alpha
        + 9.0 * j * eta * alpha**2 * (1.0 + 4.5 * eta**2)
        + 9.0 * j**2 * alpha**3 * (-13.0 + 2.0 * eta**2)
        - 135.0 * j**3 * alpha**4 * eta
        + 1215.0 * j**4 * alpha**5
    )
    log_arg = j * (eta + 3.0 * j * alpha) + root
    f_term = -0.125j * (
        j * root * poly
        + (1.0 - 9.0 * j**2 * alpha**2) ** 2
        * (4.0 + 45.0 * j**2 * alpha**2)
        * np.log(log_arg)
    )
    q = eta / j
    k_inner = 4.0 + 3.0 * j**2 * alpha * (
        -9.0 * alpha
        + q
        * (
            -4.0
            + 9.0 * j**2 * alpha
            * (
                3.0 * alpha
                + q
                * (
                    2.0
                    + j**2 * alpha
                    * (
                        81.0 * alpha
                        - 2.0 * q * (5.0 + 3.0 * j**2 * (7.0 * q - 27.0 * alpha) * alpha)
                    )
                )
            )
        )
    )
    k_term = 1j * np.sqrt(complex(1.0 + 6.0 * j * alpha * eta)) / 1701.0 * k_inner
    return {
        "A": complex(a_term),
        "B": complex(b_term),
        "E": complex(e_term),
        "F": complex(f_term),
        "G": complex(g_term),
        "K": complex(k_term),
    }


def variant_phase(j: float, alpha: float, eta: float) -> float:
    """Assembled printed closed-form phase arg(sqrt(A) B exp(-(E+F+G+K)))."""
    t = variant_phase_terms(j, alpha, eta)
    value = np.sqrt(t["A"]) * t["B"] * np.exp(-(t["E"] + t["F"] + t["G"] + t["K"]))
    return float(np.angle(value))


def variant_optimal_diagonal(j: float, alpha: float) -> np.ndarray:
    """Printed optimal-state diagonal; diagnostic only.

    The printed matrix carries the central populations in the opposite
    order from the propagated state; the off-diagonal entries agree.
    """
    x = math.exp(-2.0 * j) * math.cos(1.0 / alpha)
    return np.array([0.0, 0.5 * (1.0 + x), 0.5 * (1.0 - x), 0.0])


def _params(j, alpha, convention, gamma=0.0, b=0.0) -> ModelParams:
    return ModelParams(
        coupling_j=j,
        anisotropy_gamma=gamma,
        field_b=b,
        noise_alpha=alpha,
        convention=convention,
    )


def _route_alphas(convention: Convention) -> tuple[float, ...]:
    # alpha = 0 has no literal-convention rate
    if convention is Convention.LITERAL:
        return (0.01, 0.1)
    return (0.0, 0.01, 0.1)


def run_verify(
    convention: Convention = Convention.PAPER,
    tol_overrides: dict[str, float] | None = None,
) -> VerificationReport:
    """Run the full check list and assemble the report."""
    tols = dict(DEFAULT_TOLS)
    for name, value in (tol_overrides or {}).items():
        if name not in tols:
            raise ConfigError(f"unknown check name in tolerance override: '{name}'")
        tols[name] = float(value)
    literal = convention is Convention.LITERAL
    literal_note = "expected mismatch under the literal convention"
    checks: list[CheckResult] = []

    def add(name, measured, *, expected=0.0, as_known=False, note="", larger_ok=False):
        tol = tols[name]
        if as_known:
            status = KNOWN
        elif larger_ok:
            status = PASS if measured >= tol else FAIL
        else:
            status = PASS if measured <= tol else FAIL
        checks.append(
            CheckResult(
                name=name,
                status=status,
                measured=float(measured),
                expected=float(expected),
                tolerance=tol,
                note=note,
            )
        )

    # propagation routes against each other
    grid_n = 201
    eta_max = 2.0 * math.pi
    worst_rk4 = 0.0
    worst_closed = 0.0
    worst_conc = 0.0
    for alpha in _route_alphas(convention):
        params = _params(0.3, alpha, convention, gamma=1.0, b=0.5)
        tr_an = make_trajectory(params, eta_max, grid_n, Method.ANALYTIC)
        tr_rk = make_trajectory(params, eta_max, grid_n, Method.RK4)
        tr_cl = make_trajectory(params, eta_max, grid_n, Method.CLOSED)
        worst_rk4 = max(worst_rk4, float(np.abs(tr_rk.states - tr_an.states).max()))
        worst_closed = max(
            worst_closed, float(np.abs(tr_cl.states - tr_an.states).max())
        )
        c_direct = concurrence_many(tr_an.states)
        c_closed = concurrence_closed_form(params, tr_an.etas)
        worst_conc = max(worst_conc, float(np.abs(c_direct - c_closed).max()))
    add("route-rk4-analytic", worst_rk4)
    add(
        "route-closed-analytic",
        worst_closed,
        as_known=literal,
        note=literal_note if literal else "",
    )
    add(
        "concurrence-closed-wootters",
        worst_conc,
        as_known=literal,
        note=literal_note if literal else "",
    )

    # unitary-limit concurrence peaks, closed form only
    peak_params = _params(0.3, 0.0, convention)
    peaks = np.array([math.pi / 4 + k * math.pi / 2 for k in range(4)])
    add(
        "concurrence-peaks",
        float(np.abs(np.asarray(concurrence_closed_form(peak_params, peaks)) - 1.0).max()),
        expected=1.0,
    )

    # Hilbert-Schmidt rate and speed against numerics and identities
    worst_rate = 0.0
    etas = np.linspace(0.05, eta_max, 101)
    keep = np.abs(np.mod(etas + math.pi / 4, math.pi / 2) - math.pi / 4) > 1e-4
    for j in (0.3, 0.5):
        for alpha in (0.01, 0.05, 0.1):
            params = _params(j, alpha, convention)
            for eta in etas[keep]:
                closed = hs_rate_closed_form(params, eta)
                numeric = hs_rate_numeric(params, eta)
                worst_rate = max(worst_rate, abs(numeric - closed) / abs(closed))
    add(
        "hs-rate-closed-numeric",
        worst_rate,
        as_known=literal,
        note=literal_note if literal else "",
    )

    jg, ag, eg = np.meshgrid(
        np.linspace(0.1, 1.0, 10),
        np.linspace(0.0, 1.0, 10),
        np.linspace(0.1, 6.0, 10),
        indexing="ij",
    )
    worst_speed = 0.0
    worst_deriv = 0.0
    h = 1e-6
    for j, alpha, eta in zip(jg.ravel(), ag.ravel(), eg.ravel()):
        params = _params(float(j), float(alpha), convention)
        rate = hs_rate_closed_form(params, float(eta))
        speed = hs_speed_closed_form(params, float(eta))
        ident = 4.0 * alpha * j * rate
        worst_speed = max(worst_speed, abs(speed - ident) / max(abs(ident), 1e-300))
        deriv = (
            hs_rate_closed_form(params, float(eta) + h)
            - hs_rate_closed_form(params, float(eta) - h)
        ) / (2.0 * h)
        worst_deriv = max(
            worst_deriv, abs(abs(deriv) - speed) / max(abs(speed), 1e-300)
        )
    add("hs-speed-identity", worst_speed)
    add("hs-rate-eta-derivative", worst_deriv)

    # Bures closed forms
    c_grid = np.linspace(0.0, 1.0, 1001)
    f_grid = np.asarray(fidelity_of_separability(c_grid))
    l_grid = np.asarray(bures_length_vs_concurrence(c_grid))
    v_grid = np.asarray(bures_speed_vs_concurrence(c_grid))
    endpoint_err = max(
        abs(f_grid[0] - 1.0),
        abs(f_grid[-1] - 0.5),
        abs(l_grid[0]),
        abs(l_grid[-1] - 1.0),
    )
    add("bures-endpoints", endpoint_err)
    margin = min(
        float(np.min(np.diff(l_grid))),
        float(np.min(-np.diff(f_grid))),
        float(np.min(-np.diff(v_grid))),
    )
    add("bures-monotonic", margin, larger_ok=True, note="smallest strict step")
    add(
        "bures-speed-identity",
        float(np.abs(v_grid - np.sqrt(f_grid / 8.0)).max()),
    )

    # separable-state search against the fidelity bound
    worst_excess = -1.0
    weak_reach = 1.0
    for alpha in (0.05, 0.1):
        params = _params(0.3, alpha, convention)
        tr = make_trajectory(params, eta_max, 6, Method.ANALYTIC)
        c_vals = concurrence_many(tr.states)
        for state, c in zip(tr.states, c_vals):
            best = separable_fidelity_search(state, n_samples=400, seed=0)
            bound = fidelity_of_separability(float(c))
            worst_excess = max(worst_excess, best - bound)
            if c < 0.05:
                weak_reach = min(weak_reach, best)
    add("separable-search-bound", worst_excess, note="max F_best - F_sep")
    add(
        "separable-search-reach",
        weak_reach,
        larger_ok=True,
        note="min F_best over nearly separable states",
    )

    # gamma / B invariance of the trajectory
    base = None
    worst_inv = 0.0
    for gamma, b in ((0.0, 0.0), (1.0, 0.5), (-2.0, 3.0)):
        params = _params(0.3, 0.05, convention, gamma=gamma, b=b)
        tr = make_trajectory(params, eta_max, 101, Method.ANALYTIC)
        if base is None:
            base = tr.states
        else:
            worst_inv = max(worst_inv, float(np.abs(tr.states - base).max()))
    add("gamma-b-invariance", worst_inv)

    # shortest-time identities
    br_params = _params(0.65, 0.2, convention)
    tm = t_min(br_params)
    add("brachistochrone-tmin", abs(tm - 25.0 / 13.0), expected=25.0 / 13.0)
    state_diff = float(
        np.abs(
            propagate_analytic(br_params, tm).matrix - optimal_state(br_params).matrix
        ).max()
    )
    add(
        "brachistochrone-state",
        state_diff,
        as_known=literal,
        note=literal_note if literal else "",
    )
    add("brachistochrone-residual", milburn_residual(br_params, tm))

    # kinematic phase diagnostics
    ph_params = _params(0.09, 0.06, convention)
    tr = make_trajectory(ph_params, eta_max, 1001, Method.ANALYTIC)
    plain = tong_phase(tr)
    scrambled = tong_phase(tr, phase_seed=20260822)
    add(
        "phase-gauge-invariance",
        abs(wrap_angle(plain.phase - scrambled.phase)),
    )
    dense = tong_phase(make_trajectory(ph_params, eta_max, 4001, Method.ANALYTIC))
    add("phase-grid-convergence", dense.grid_halving_error)

    if literal:
        add(
            "phase-pure-oracle",
            float("nan"),
            as_known=True,
            note="needs the unitary limit alpha = 0, unavailable under the "
            "literal convention",
        )
    else:
        pure_params = _params(0.09, 0.0, convention)
        worst_phase = 0.0
        for eta_end in (1.0, 2.0, 2.5, 4.0, 5.5):
            tr = make_trajectory(pure_params, eta_end, 2001, Method.ANALYTIC)
            kin = tong_phase(tr).phase
            oracle = pure_state_phase_oracle(pure_params, eta_end)
            worst_phase = max(worst_phase, abs(wrap_angle(kin - oracle)))
        add("phase-pure-oracle", worst_phase)

    # documented discrepancies of the printed closed forms
    direct_p = 0.5 * (1.0 + math.exp(-4.0 * 0.1 * 0.3 * 1.0))
    printed_p = variant_population_plus(0.3, 0.1, 1.0)
    add(
        "eigenvalue-formula-probe",
        direct_p,
        expected=printed_p,
        as_known=True,
        note=f"direct {direct_p:.10f} vs printed {printed_p:.10f}, "
        f"diff {abs(direct_p - printed_p):.3e}",
    )

    probe_tr = make_trajectory(_params(0.09, 0.06, convention), 1.0, 2001, Method.ANALYTIC)
    kin_phase = tong_phase(probe_tr).phase
    printed_phase = variant_phase(0.09, 0.06, 1.0)
    add(
        "phase-formula-probe",
        kin_phase,
        expected=printed_phase,
        as_known=True,
        note=f"kinematic {kin_phase:.10f} vs printed {printed_phase:.10f}, "
        f"diff {abs(wrap_angle(kin_phase - printed_phase)):.3e}",
    )

    printed_diag = variant_optimal_diagonal(0.65, 0.2)
    actual_diag = np.diag(optimal_state(br_params).matrix).real
    diag_diff = float(np.abs(printed_diag - actual_diag).max())
    add(
        "optimal-diagonal-probe",
        diag_diff,
        as_known=True,
        note="printed central populations appear in the opposite order; "
        f"off-diagonals agree, max diagonal diff {diag_diff:.3e}",
    )

    return VerificationReport(checks=tuple(checks), convention=convention)
