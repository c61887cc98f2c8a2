"""CSV emission: fixed headers, 12 significant digits, '\\n' endings, UTF-8."""

from __future__ import annotations

import sys
from typing import Iterable, Sequence

SCAN_HEADER = (
    "eta",
    "alpha",
    "J",
    "gamma",
    "B",
    "C",
    "L_HS",
    "V_HS",
    "F_sep",
    "L_B",
    "V_B",
    "Phi_g",
)

EVOLVE_HEADER = (
    "eta",
    "alpha",
    "J",
    "gamma",
    "B",
    "u22",
    "u33",
    "re_u23",
    "im_u23",
    "purity",
)

PHASE_HEADER = ("eta", "Phi_g_tong", "Phi_g_closed_form", "delta", "converged")


def fmt(x) -> str:
    """Canonical numeric field: 12 significant digits, no negative zero."""
    x = float(x)
    if x == 0.0:
        x = 0.0
    return format(x, ".12g")


def fmt_bool(x) -> str:
    return "true" if x else "false"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def write_text(text: str, out_path: str | None) -> None:
    """Write to a file, or stdout when no path is given.

    I/O failures propagate as OSError; the CLI maps them to exit code 3.
    """
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
