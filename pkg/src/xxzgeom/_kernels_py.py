"""Pure numpy implementation of the hot kernels.

API twin of the compiled ``xxzgeom._kernels`` extension; which one is active
is decided once, in :mod:`xxzgeom.backend`.
"""

import numpy as np

NAME = "python"


def eigh_small(a):
    """Eigendecomposition of one small Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ascending and eigenvectors as the
    columns of ``v``.
    """
    return np.linalg.eigh(a)


def eigh_many(mats, vectors=True):
    """Batched Hermitian eigendecomposition of a (m, n, n) stack.

    Returns ``(w, v)``; ``v`` is None when ``vectors`` is false.
    """
    if vectors:
        w, v = np.linalg.eigh(mats)
        return w, v
    return np.linalg.eigvalsh(mats), None


def rk4_milburn(h, kappa, d0, t_total, n_steps, n_save):
    """Integrate dD/dt = -i[H, D] - kappa [H, [H, D]] with classic RK4.

    Returns ``n_save + 1`` snapshots at uniform times including both
    endpoints; ``n_steps`` must be a multiple of ``n_save``.  The state is
    re-hermitized after every step and the trace is never renormalized.
    """
    if n_save < 1 or n_steps % n_save:
        raise ValueError("n_steps must be a positive multiple of n_save")
    dt = t_total / n_steps
    every = n_steps // n_save
    d = np.array(d0, dtype=complex)
    out = np.empty((n_save + 1,) + d.shape, dtype=complex)
    out[0] = d

    def deriv(m):
        c1 = h @ m - m @ h
        return -1j * c1 - kappa * (h @ c1 - c1 @ h)

    for k in range(1, n_steps + 1):
        k1 = deriv(d)
        k2 = deriv(d + (0.5 * dt) * k1)
        k3 = deriv(d + (0.5 * dt) * k2)
        k4 = deriv(d + dt * k3)
        d = d + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        d = 0.5 * (d + d.conj().T)
        if k % every == 0:
            out[k // every] = d
    return out
