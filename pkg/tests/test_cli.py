"""End-to-end command tests through main(argv)."""

import math
import os

import numpy as np
import pytest

from xxzgeom.cli import main
from xxzgeom.output import EVOLVE_HEADER, PHASE_HEADER, SCAN_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    lines = text.strip().split("\n")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_spectrum_example(capsys):
    code, out, _ = run(capsys, "spectrum", "--J", "0.3", "--gamma", "1", "--B", "0.5")
    assert code == 0
    assert "E1 = 2" in out
    assert "E2 = -0.4" in out
    assert "E3 = -1.6" in out
    assert "E4 = 0" in out
    assert "0.707106781187" in out


def test_spectrum_zero_coupling(capsys):
    code, out, _ = run(capsys, "spectrum", "--J", "0", "--gamma", "0", "--B", "0")
    assert code == 0
    for line in out.splitlines():
        if line.strip().startswith("E"):
            assert line.split("=")[1].strip() == "0"


def test_spectrum_missing_j_is_usage_error(capsys):
    code, _, _ = run(capsys, "spectrum")
    assert code == 2


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_evolve_columns_and_values(capsys):
    code, out, _ = run(
        capsys, "evolve", "--J", "0.3", "--gamma", "1", "--B", "0.5",
        "--alpha", "0.1", "--eta-max", "2", "--steps", "5",
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == list(EVOLVE_HEADER)
    assert len(rows) == 5
    # eta = 1 row carries the frozen closed-form elements
    row = rows[2]
    assert float(row[0]) == pytest.approx(1.0)
    assert float(row[5]) == pytest.approx(0.6845445670044276, abs=1e-11)
    assert float(row[6]) == pytest.approx(0.31545543299557244, abs=1e-11)
    assert float(row[8]) == pytest.approx(-0.4032372354530106, abs=1e-11)


def test_evolve_rejects_multiple_alphas(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("alphas = 0.1, 0.2\n", encoding="utf-8")
    code, _, err = run(capsys, "evolve", "--config", str(cfg))
    assert code == 2
    assert "alpha" in err


def test_scan_rows_and_column_blanks(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("quantities = C, VB\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "scan", "--config", str(cfg), "--J", "0.3",
        "--alphas", "0,0.1", "--eta-max", "1", "--steps", "4",
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == list(SCAN_HEADER)
    assert len(rows) == 8  # two alpha cells, four eta points each
    # alpha cells in the given order, eta increasing inside each
    assert [float(r[1]) for r in rows] == [0.0] * 4 + [0.1] * 4
    assert [float(r[0]) for r in rows[:4]] == pytest.approx([0, 1 / 3, 2 / 3, 1.0])
    for r in rows:
        filled = {SCAN_HEADER[i] for i, field in enumerate(r) if field != ""}
        assert "C" in filled and "V_B" in filled
        assert "L_HS" not in filled and "Phi_g" not in filled


def test_scan_concurrence_against_closed_form(capsys):
    code, out, _ = run(
        capsys, "scan", "--J", "0.3", "--alpha", "0.1",
        "--eta-max", "2", "--steps", "21",
    )
    assert code == 0
    _, rows = parse_csv(out)
    for r in rows:
        eta = float(r[0])
        c = float(r[5])
        expect = math.exp(-4 * 0.1 * 0.3 * eta) * abs(math.sin(2 * eta))
        assert c == pytest.approx(expect, abs=1e-10)


def test_scan_alpha_and_alphas_conflict(capsys):
    code, _, err = run(
        capsys, "scan", "--alpha", "0.1", "--alphas", "0.1,0.2"
    )
    assert code == 2
    assert "either" in err


def test_scan_writes_file_and_is_deterministic(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("quantities = C, LHS, VHS, F, LB, VB\n", encoding="utf-8")
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for path in (out1, out2):
        code, _, _ = run(
            capsys, "scan", "--config", str(cfg), "--J", "0.3",
            "--alphas", "0,0.05", "--steps", "11", "--out", str(path),
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_scan_unwritable_path(capsys):
    code, _, _ = run(
        capsys, "scan", "--steps", "3", "--out", "/nonexistent-dir/x.csv"
    )
    assert code == 3


def test_brachistochrone_report(capsys):
    code, out, _ = run(capsys, "brachistochrone", "--J", "0.65", "--alpha", "0.2")
    assert code == 0
    assert "t_min = 1.92307692308" in out
    assert "v_hs_max = 0.987793073067" in out
    assert "l_hs_at_c1 = 1.89960206359" in out
    assert "optimal state:" in out
    residual = float(out.split("milburn_residual = ")[1].split()[0])
    assert residual < 1e-6


def test_brachistochrone_zero_alpha_domain_error(capsys):
    code, _, err = run(capsys, "brachistochrone", "--J", "0.65", "--alpha", "0")
    assert code == 4
    assert "diverges" in err


def test_geomphase_columns(capsys):
    code, out, _ = run(
        capsys, "geomphase", "--J", "0.09", "--alpha", "0.06",
        "--eta-max", "2", "--steps", "101",
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == list(PHASE_HEADER)
    assert len(rows) == 101
    for r in rows:
        assert r[2] == "" and r[3] == ""
        assert r[4] in ("true", "false")


def test_geomphase_closed_form_flag(capsys):
    code, out, _ = run(
        capsys, "geomphase", "--J", "0.09", "--alpha", "0.06",
        "--eta-max", "1", "--steps", "101", "--closed-form",
    )
    assert code == 0
    _, rows = parse_csv(out)
    for r in rows[1:]:
        assert r[2] != "" and r[3] != ""
        # delta is tong minus closed form, wrapped
        assert abs(float(r[3])) <= math.pi + 1e-12


def test_geomphase_alpha_zero_pattern(capsys):
    code, out, _ = run(
        capsys, "geomphase", "--J", "0.09", "--alpha", "0",
        "--eta-max", "3", "--steps", "301",
    )
    assert code == 0
    _, rows = parse_csv(out)
    for r in rows:
        eta = float(r[0])
        if min(abs(eta - k * math.pi / 2) for k in range(4)) < 1e-3:
            continue
        phi = abs(float(r[1]))
        assert min(phi, abs(phi - math.pi)) < 1e-6


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "known-discrepancy" in out
    assert "0 fail" in out
    code, out, _ = run(
        capsys, "verify", "--tol-route-rk4-analytic", "1e-20"
    )
    assert code == 1
    assert "[FAIL] route-rk4-analytic" in out


def test_verify_unknown_tol_flag(capsys):
    code, _, _ = run(capsys, "verify", "--tol-not-a-check", "1")
    assert code == 2


def test_figures_writes_all_panels(tmp_path, capsys):
    out_dir = tmp_path / "figs"
    code, out, _ = run(capsys, "figures", "--out-dir", str(out_dir))
    assert code == 0
    names = sorted(os.listdir(out_dir))
    assert names == sorted(
        [
            "fig3.csv", "fig4a.csv", "fig4b.csv", "fig6a.csv", "fig6b.csv",
            "fig7a.csv", "fig7b.csv", "fig8a.csv", "fig8b.csv",
            "fig8-speeds.csv", "fig9.csv",
        ]
    )
    for name in names:
        text = (out_dir / name).read_text(encoding="utf-8")
        assert text.startswith(",".join(SCAN_HEADER) + "\n")


def test_figures_unwritable_dir(capsys):
    code, _, _ = run(capsys, "figures", "--out-dir", "/proc/0/nope")
    assert code == 3


def test_config_literal_convention_selected(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("convention = literal\nquantities = C\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "scan", "--config", str(cfg), "--alpha", "0.1",
        "--eta-max", "1", "--steps", "3",
    )
    # scan columns are closed forms, so the file stays the same either way;
    # what matters is that the key parses and the command succeeds
    assert code == 0


def test_threads_env_rejected_when_invalid(capsys, monkeypatch):
    monkeypatch.setenv("XXZGEOM_THREADS", "zero")
    code, _, err = run(capsys, "scan", "--alphas", "0,0.1", "--steps", "3")
    assert code == 2
    assert "XXZGEOM_THREADS" in err


def test_threads_env_caps_workers(capsys, monkeypatch):
    monkeypatch.setenv("XXZGEOM_THREADS", "1")
    code, out, _ = run(
        capsys, "scan", "--alphas", "0,0.05,0.1", "--eta-max", "1",
        "--steps", "5",
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 15
