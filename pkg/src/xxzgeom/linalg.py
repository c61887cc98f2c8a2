"""Small dense Hermitian linear algebra shared across the package.

Everything here works on plain complex ndarrays.  Dimension 2 gets a
closed-form eigensolver; larger matrices go through the kernel backend.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from . import backend

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

HERMITICITY_TOL = 1e-10


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose, batched over leading axes."""
    return np.conj(np.swapaxes(a, -1, -2))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dag b)."""
    return complex(np.vdot(a, b))


def hs_norm(a: np.ndarray) -> float:
    """Frobenius norm, the Hilbert-Schmidt length of a."""
    return float(np.linalg.norm(a))


def hermiticity_defect(a: np.ndarray) -> float:
    return hs_norm(a - adjoint(a))


@dataclasses.dataclass(frozen=True)
class HermitianEig:
    """Eigenvalues ascending, eigenvectors as columns of ``vectors``."""

    values: np.ndarray
    vectors: np.ndarray


def _eigh2(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # closed form for the 2x2 Hermitian case; the two candidate eigenvector
    # expressions degrade at opposite corners of parameter space, so keep
    # whichever has the larger norm
    a11 = a[0, 0].real
    a22 = a[1, 1].real
    a12 = a[0, 1]
    mean = 0.5 * (a11 + a22)
    diff = 0.5 * (a11 - a22)
    radius = math.hypot(diff, abs(a12))
    w = np.array([mean - radius, mean + radius])
    if radius < 1e-300:
        return w, np.eye(2, dtype=complex)
    cand_a = np.array([a12, radius - diff], dtype=complex)
    cand_b = np.array([radius + diff, np.conj(a12)], dtype=complex)
    na = np.linalg.norm(cand_a)
    nb = np.linalg.norm(cand_b)
    v_plus = cand_a / na if na >= nb else cand_b / nb
    v_minus = np.array([-np.conj(v_plus[1]), np.conj(v_plus[0])])
    v = np.column_stack([v_minus, v_plus])
    return w, v


def eig_hermitian(a: np.ndarray) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises ValueError when the input is visibly non-Hermitian; callers are
    expected to hand in exact Hermitian data, not something to symmetrize.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    defect = hermiticity_defect(a)
    if defect > HERMITICITY_TOL:
        raise ValueError(
            f"matrix is not Hermitian: |A - A^dag| = {defect:.3e} "
            f"exceeds {HERMITICITY_TOL:.0e}"
        )
    if a.shape[0] == 2:
        w, v = _eigh2(a)
    else:
        w, v = backend.eigh_small(a)
    return HermitianEig(values=np.asarray(w, dtype=float), vectors=v)


def sqrt_psd(a: np.ndarray, *, neg_tol: float = 1e-8) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix.

    Eigenvalues in [-neg_tol, 0) are clipped to zero; anything below
    -neg_tol raises, since that signals corrupted input rather than
    round-off.
    """
    eig = eig_hermitian(a)
    w = eig.values
    if w[0] < -neg_tol:
        raise ValueError(
            f"matrix is not positive semidefinite: lowest eigenvalue {w[0]:.3e}"
        )
    root = np.sqrt(np.clip(w, 0.0, None))
    v = eig.vectors
    out = (v * root) @ adjoint(v)
    return 0.5 * (out + adjoint(out))
