# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: cyclic-Jacobi Hermitian eigensolver and Milburn RK4.

API twin of ``xxzgeom._kernels_py``; selection happens in ``xxzgeom.backend``.
"""

import numpy as np

from libc.math cimport fabs, hypot, sqrt

NAME = "compiled"

DEF MAXN = 8


cdef inline double complex _conj(double complex z) noexcept nogil:
    return z.real - z.imag * 1j


cdef void _jacobi(double complex[:, ::1] a, double complex[:, ::1] v,
                  int n, bint want_vectors) noexcept nogil:
    # Cyclic complex Jacobi; eigenvalues end up on the diagonal of `a`,
    # accumulated rotations in `v`.  Quadratic convergence makes the sweep
    # cap generous for n <= MAXN.
    cdef int p, q, k, sweep
    cdef double app, aqq, m, tau, t, c, s, off, norm2
    cdef double complex apq, f, x, y

    if want_vectors:
        for p in range(n):
            for q in range(n):
                v[p, q] = 1.0 if p == q else 0.0

    norm2 = 0.0
    for p in range(n):
        for q in range(n):
            norm2 += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag

    for sweep in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
        if off <= 1e-32 * norm2 + 1e-300:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                m = hypot(apq.real, apq.imag)
                if m == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                f = apq / m
                tau = (aqq - app) / (2.0 * m)
                t = (1.0 if tau >= 0.0 else -1.0) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = c * x - s * _conj(f) * y
                    a[k, q] = s * f * x + c * y
                    a[p, k] = _conj(a[k, p])
                    a[q, k] = _conj(a[k, q])
                a[p, p] = app * c * c - 2.0 * s * c * m + aqq * s * s
                a[q, q] = app * s * s + 2.0 * s * c * m + aqq * c * c
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_vectors:
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - s * _conj(f) * y
                        v[k, q] = s * f * x + c * y


cdef void _sorted_out(double complex[:, ::1] work, double complex[:, ::1] vwork,
                      double[::1] w, double complex[:, ::1] v,
                      int n, bint want_vectors) noexcept nogil:
    # ascending eigenvalue order with matching column permutation
    cdef int i, j, k, best
    cdef int idx[MAXN]
    cdef double wb
    for i in range(n):
        idx[i] = i
    for i in range(n - 1):
        best = i
        for j in range(i + 1, n):
            if work[idx[j], idx[j]].real < work[idx[best], idx[best]].real:
                best = j
        k = idx[i]
        idx[i] = idx[best]
        idx[best] = k
    for i in range(n):
        w[i] = work[idx[i], idx[i]].real
        if want_vectors:
            for k in range(n):
                v[k, i] = vwork[k, idx[i]]


def eigh_small(a):
    """Eigendecomposition of one small Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ascending and eigenvectors as the
    columns of ``v``.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    cdef int n = a.shape[0]
    if n > MAXN:
        raise ValueError(f"compiled eigensolver is limited to n <= {MAXN}")
    work = a.copy()
    vwork = np.empty((n, n), dtype=np.complex128)
    w = np.empty(n, dtype=np.float64)
    v = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] mwork = work
    cdef double complex[:, ::1] mvwork = vwork
    cdef double complex[:, ::1] mv = v
    cdef double[::1] mw = w
    with nogil:
        _jacobi(mwork, mvwork, n, True)
        _sorted_out(mwork, mvwork, mw, mv, n, True)
    return w, v


def eigh_many(mats, vectors=True):
    """Batched Hermitian eigendecomposition of a (m, n, n) stack.

    Returns ``(w, v)``; ``v`` is None when ``vectors`` is false.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a (m, n, n) stack")
    cdef Py_ssize_t count = mats.shape[0]
    cdef int n = mats.shape[1]
    if n > MAXN:
        raise ValueError(f"compiled eigensolver is limited to n <= {MAXN}")
    cdef bint want = bool(vectors)
    work = mats.copy()
    vwork = np.empty((n, n), dtype=np.complex128)
    w = np.empty((count, n), dtype=np.float64)
    v = np.empty((count, n, n), dtype=np.complex128) if want else None
    cdef double complex[:, :, ::1] mwork = work
    cdef double complex[:, ::1] mvwork = vwork
    cdef double[:, ::1] mw = w
    cdef double complex[:, :, ::1] mv = v if want else vwork[None, :, :]
    cdef Py_ssize_t i
    with nogil:
        for i in range(count):
            _jacobi(mwork[i], mvwork, n, want)
            if want:
                _sorted_out(mwork[i], mvwork, mw[i], mv[i], n, True)
            else:
                _sorted_out(mwork[i], mvwork, mw[i], mvwork, n, False)
    return w, (v if want else None)


cdef void _matmul(double complex[:, ::1] a, double complex[:, ::1] b,
                  double complex[:, ::1] out, int n) noexcept nogil:
    cdef int i, j, k
    cdef double complex acc
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc


cdef void _deriv(double complex[:, ::1] h, double kappa,
                 double complex[:, ::1] d, double complex[:, ::1] c1,
                 double complex[:, ::1] t1, double complex[:, ::1] t2,
                 double complex[:, ::1] out, int n) noexcept nogil:
    # out = -i [H, D] - kappa [H, [H, D]]
    cdef int i, j
    _matmul(h, d, t1, n)
    _matmul(d, h, t2, n)
    for i in range(n):
        for j in range(n):
            c1[i, j] = t1[i, j] - t2[i, j]
    _matmul(h, c1, t1, n)
    _matmul(c1, h, t2, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = -1j * c1[i, j] - kappa * (t1[i, j] - t2[i, j])


def rk4_milburn(h, double kappa, d0, double t_total, long n_steps, long n_save):
    """Integrate dD/dt = -i[H, D] - kappa [H, [H, D]] with classic RK4.

    Returns ``n_save + 1`` snapshots at uniform times including both
    endpoints; ``n_steps`` must be a multiple of ``n_save``.  The state is
    re-hermitized after every step and the trace is never renormalized.
    """
    if n_save < 1 or n_steps % n_save:
        raise ValueError("n_steps must be a positive multiple of n_save")
    h = np.ascontiguousarray(h, dtype=np.complex128)
    d = np.array(d0, dtype=np.complex128, order="C")
    if h.shape != d.shape or h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("H and D must be square matrices of equal dimension")
    cdef int n = h.shape[0]
    if n > MAXN:
        raise ValueError(f"compiled RK4 is limited to n <= {MAXN}")
    cdef double dt = t_total / n_steps
    cdef long every = n_steps // n_save
    out = np.empty((n_save + 1, n, n), dtype=np.complex128)
    out[0] = d
    scratch = np.empty((8, n, n), dtype=np.complex128)
    cdef double complex[:, :, ::1] mout = out
    cdef double complex[:, ::1] mh = h
    cdef double complex[:, ::1] md = d
    cdef double complex[:, ::1] k1 = scratch[0]
    cdef double complex[:, ::1] k2 = scratch[1]
    cdef double complex[:, ::1] k3 = scratch[2]
    cdef double complex[:, ::1] k4 = scratch[3]
    cdef double complex[:, ::1] c1 = scratch[4]
    cdef double complex[:, ::1] t1 = scratch[5]
    cdef double complex[:, ::1] t2 = scratch[6]
    cdef double complex[:, ::1] stage = scratch[7]
    cdef long step, slot
    cdef int i, j
    cdef double complex x
    with nogil:
        for step in range(1, n_steps + 1):
            _deriv(mh, kappa, md, c1, t1, t2, k1, n)
            for i in range(n):
                for j in range(n):
                    stage[i, j] = md[i, j] + 0.5 * dt * k1[i, j]
            _deriv(mh, kappa, stage, c1, t1, t2, k2, n)
            for i in range(n):
                for j in range(n):
                    stage[i, j] = md[i, j] + 0.5 * dt * k2[i, j]
            _deriv(mh, kappa, stage, c1, t1, t2, k3, n)
            for i in range(n):
                for j in range(n):
                    stage[i, j] = md[i, j] + dt * k3[i, j]
            _deriv(mh, kappa, stage, c1, t1, t2, k4, n)
            for i in range(n):
                for j in range(n):
                    md[i, j] = md[i, j] + (dt / 6.0) * (
                        k1[i, j] + 2.0 * (k2[i, j] + k3[i, j]) + k4[i, j])
            # (D + D^dag)/2 keeps round-off from drifting the state off the
            # Hermitian manifold
            for i in range(n):
                md[i, i] = md[i, i].real
                for j in range(i + 1, n):
                    x = 0.5 * (md[i, j] + _conj(md[j, i]))
                    md[i, j] = x
                    md[j, i] = _conj(x)
            if step % every == 0:
                slot = step // every
                for i in range(n):
                    for j in range(n):
                        mout[slot, i, j] = md[i, j]
    return out
