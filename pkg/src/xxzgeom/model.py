"""Two XXZ-coupled spin-1/2 particles in a uniform z field.

    H = J (sx sx + sy sy) + gamma sz sz + B (sz 1 + 1 sz)

in the product basis {up-up, up-down, down-up, down-down}, with hbar = 1.
The dimensionless time used throughout is eta = 2 J t.
"""

from __future__ import annotations

import dataclasses
import enum

import numpy as np

from .linalg import ID2, PAULI_X, PAULI_Y, PAULI_Z


class Convention(str, enum.Enum):
    """Mapping from the decoherence parameter alpha to the Milburn rate kappa.

    Two readings of the master equation's prefactor are in circulation.
    ``PAPER`` takes kappa = alpha / 2, so alpha multiplies the double
    commutator directly and alpha = 0 means unitary evolution; every closed
    form in this package is written in that convention.  ``LITERAL`` takes
    kappa = 1 / (2 alpha), the reading in which 1/alpha is a rate; there
    alpha = 0 is singular and large alpha means weak decoherence.
    """

    PAPER = "paper"
    LITERAL = "literal"


@dataclasses.dataclass(frozen=True)
class ModelParams:
    """Model constants.  ``coupling_j`` must be positive; the rest are free."""

    coupling_j: float
    anisotropy_gamma: float = 0.0
    field_b: float = 0.0
    noise_alpha: float = 0.0
    convention: Convention = Convention.PAPER

    def __post_init__(self) -> None:
        if not self.coupling_j > 0:
            raise ValueError(f"coupling_j must be positive, got {self.coupling_j}")
        if self.noise_alpha < 0:
            raise ValueError(f"noise_alpha must be nonnegative, got {self.noise_alpha}")


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """4x4 Hamiltonian assembled from Pauli tensor products."""
    j = params.coupling_j
    g = params.anisotropy_gamma
    b = params.field_b
    h = (
        j * (np.kron(PAULI_X, PAULI_X) + np.kron(PAULI_Y, PAULI_Y))
        + g * np.kron(PAULI_Z, PAULI_Z)
        + b * (np.kron(PAULI_Z, ID2) + np.kron(ID2, PAULI_Z))
    )
    return 0.5 * (h + h.conj().T)


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """Exact eigenpairs; ``states`` holds the eigenvectors as columns."""

    energies: np.ndarray
    states: np.ndarray


def spectrum(params: ModelParams) -> Spectrum:
    """Closed-form spectrum of the Hamiltonian.

    The ordering is up-up, symmetric and antisymmetric combinations of
    up-down / down-up, then down-down; only the middle pair depends on J.
    """
    j = params.coupling_j
    g = params.anisotropy_gamma
    b = params.field_b
    energies = np.array([g + 2 * b, -g + 2 * j, -g - 2 * j, g - 2 * b])
    s = 1.0 / np.sqrt(2.0)
    states = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, s, s, 0.0],
            [0.0, s, -s, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        dtype=complex,
    ).T
    return Spectrum(energies=energies, states=states)


def eta_of_t(t: float, coupling_j: float) -> float:
    """Dimensionless time eta = 2 J t."""
    return 2.0 * coupling_j * t


def t_of_eta(eta: float, coupling_j: float) -> float:
    return eta / (2.0 * coupling_j)
