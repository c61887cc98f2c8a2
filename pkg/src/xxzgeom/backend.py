"""Kernel backend selection.

The hot numerical kernels exist twice: a compiled extension
(``xxzgeom._kernels``) and a pure-numpy twin (``xxzgeom._kernels_py``).
Import-time selection prefers the compiled one and falls back silently,
so the public API never depends on whether the build produced a binary.

The environment variable ``XXZGEOM_BACKEND`` overrides the choice:
``auto`` (default), ``compiled`` (error if unavailable) or ``python``.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("XXZGEOM_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "compiled", "python"):
    raise ImportError(
        f"XXZGEOM_BACKEND={_choice!r} is not one of 'auto', 'compiled', 'python'"
    )

if _choice == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "XXZGEOM_BACKEND=compiled but the compiled extension "
                "xxzgeom._kernels is not importable"
            )
        _impl = _kernels_py

eigh_small = _impl.eigh_small
eigh_many = _impl.eigh_many
rk4_milburn = _impl.rk4_milburn


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _impl.NAME
