"""Compiled and pure-python kernels must be interchangeable."""

import subprocess
import sys

import numpy as np
import pytest

from xxzgeom import _kernels_py
from xxzgeom.backend import backend_name

try:
    from xxzgeom import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(
    _kernels is None, reason="compiled extension not built"
)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def random_density(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    d = a @ a.conj().T
    return d / np.trace(d).real


def test_backend_name_reports_active_kernels():
    assert backend_name() in ("compiled", "python")
    if _kernels is not None:
        # auto selection prefers the compiled kernels when they import
        assert backend_name() == "compiled"


@needs_compiled
def test_eigh_small_matches_python():
    rng = np.random.default_rng(7)
    for _ in range(40):
        a = random_hermitian(rng, 4)
        wc, vc = _kernels.eigh_small(a)
        wp, vp = _kernels_py.eigh_small(a)
        assert np.allclose(wc, wp, atol=1e-12)
        # eigenvectors may differ by phase; compare the projectors
        for k in range(4):
            pc = np.outer(vc[:, k], vc[:, k].conj())
            pp = np.outer(vp[:, k], vp[:, k].conj())
            assert np.allclose(pc, pp, atol=1e-10)
        assert np.allclose(
            vc @ np.diag(wc) @ vc.conj().T, a, atol=1e-12
        )


@needs_compiled
def test_eigh_many_matches_python():
    rng = np.random.default_rng(11)
    mats = np.stack([random_density(rng, 4) for _ in range(50)])
    wc, vc = _kernels.eigh_many(mats)
    wp, _ = _kernels_py.eigh_many(mats)
    assert np.allclose(wc, wp, atol=1e-12)
    recon = vc @ (wc[:, :, None] * np.swapaxes(vc.conj(), 1, 2))
    assert np.allclose(recon, mats, atol=1e-12)


@needs_compiled
def test_eigh_many_without_vectors():
    rng = np.random.default_rng(13)
    mats = np.stack([random_hermitian(rng, 4) for _ in range(10)])
    wc, vc = _kernels.eigh_many(mats, vectors=False)
    wp, vp = _kernels_py.eigh_many(mats, vectors=False)
    assert vc is None and vp is None
    assert np.allclose(wc, wp, atol=1e-12)


@needs_compiled
def test_rk4_matches_python():
    rng = np.random.default_rng(17)
    h = random_hermitian(rng, 4)
    d0 = random_density(rng, 4)
    kc = _kernels.rk4_milburn(h, 0.05, d0, 2.0, 400, 8)
    kp = _kernels_py.rk4_milburn(h, 0.05, d0, 2.0, 400, 8)
    assert kc.shape == (9, 4, 4)
    assert np.allclose(kc, kp, atol=1e-13)


@needs_compiled
def test_rk4_rejects_bad_save_count():
    h = np.eye(4, dtype=complex)
    d0 = np.eye(4, dtype=complex) / 4.0
    for kernels in (_kernels, _kernels_py):
        with pytest.raises(ValueError, match="multiple"):
            kernels.rk4_milburn(h, 0.0, d0, 1.0, 7, 3)


def _run_with_backend(value):
    code = (
        "from xxzgeom.backend import backend_name\n"
        "print(backend_name())\n"
    )
    return subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "XXZGEOM_BACKEND": value},
    )


def test_env_override_selects_python_backend():
    proc = _run_with_backend("python")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "python"


@needs_compiled
def test_env_override_selects_compiled_backend():
    proc = _run_with_backend("compiled")
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "compiled"


def test_env_override_rejects_unknown_value():
    proc = _run_with_backend("fortran")
    assert proc.returncode != 0
    assert "XXZGEOM_BACKEND" in proc.stderr
