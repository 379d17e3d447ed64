"""Dense complex linear algebra for small (2x2 .. 4x4) Hermitian problems.

Everything downstream (Hamiltonians, density matrices, Kraus operators,
the correlation matrix) is built from the handful of primitives here:
Hermitian eigendecomposition, PSD matrix square root, Hermitian matrix
exponential, Kronecker products, commutators.

All tolerances live in the constants table below; tests import the same
values so code and tests cannot drift apart.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# ---------------------------------------------------------------------------
# Tolerance constants (single source of truth, shared with the test suite)
# ---------------------------------------------------------------------------

#: Hermiticity predicate: max|M - M^dag| <= HERMITIAN_TOL * (1 + max|M|)
HERMITIAN_TOL = 1e-12

#: Eigendecomposition must reconstruct to this (absolute-plus-relative)
EIG_RECONSTRUCTION_TOL = 1e-10

#: mat_sqrt_psd(M) @ mat_sqrt_psd(M) must match M to this
SQRT_SQUARE_TOL = 1e-9

#: Eigenvalues in [-PSD_CLAMP, 0) are roundoff and are clamped to 0;
#: anything below -PSD_CLAMP is a genuine negative eigenvalue.
PSD_CLAMP = 1e-10

#: Eigenvalues below SQRT_RELATIVE_FLOOR * lambda_max are zeroed before
#: taking square roots.  sqrt() has unbounded slope at 0, so O(eps)
#: eigenvalue noise in a near-null subspace would otherwise inject
#: O(sqrt(eps)) ~ 1e-8 noise into every downstream quantity; zeroing the
#: sub-floor subspace keeps independent evaluation routes consistent to
#: ~1e-11 instead.
SQRT_RELATIVE_FLOOR = 64 * np.finfo(float).eps

#: Density matrix trace must equal 1 to this
DENSITY_TRACE_TOL = 1e-10

# ---------------------------------------------------------------------------
# Pauli operators
# ---------------------------------------------------------------------------

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)

#: Hadamard gate, (sigma_x + sigma_z)/sqrt(2)
HADAMARD = (PAULI_X + PAULI_Z) / np.sqrt(2)


class NonHermitianInput(ValueError):
    """Input matrix fails the Hermiticity predicate."""


class NotPSD(ValueError):
    """Input matrix has an eigenvalue below -PSD_CLAMP."""


class NotADensityMatrix(ValueError):
    """Input fails a density-matrix check (shape, Hermiticity, trace or PSD)."""


class EigenDecomposition(NamedTuple):
    """Spectral data of a Hermitian matrix: M = V diag(w) V^dag."""

    eigenvalues: np.ndarray  # real, ascending
    eigenvectors: np.ndarray  # unitary, columns


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """[a, b] = ab - ba."""
    return a @ b - b @ a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with block (i, j) equal to a[i, j] * b."""
    return np.kron(a, b)


def is_hermitian(m: np.ndarray) -> bool:
    """Hermiticity predicate with the module-level tolerance."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = 1.0 + (np.max(np.abs(m)) if m.size else 0.0)
    return bool(np.max(np.abs(m - dagger(m))) <= HERMITIAN_TOL * scale)


def require_hermitian(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Return m as a complex array, raising NonHermitianInput if it fails."""
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m):
        raise NonHermitianInput(f"{what} is not Hermitian within tolerance")
    return m


def eig_hermitian(m: np.ndarray) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NonHermitianInput if the Hermiticity predicate fails.  The
    reconstruction V diag(w) V^dag reproduces the input to
    EIG_RECONSTRUCTION_TOL * (1 + max|M|).
    """
    m = require_hermitian(m)
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(w, v)


def mat_sqrt_psd(m: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root of a Hermitian PSD matrix.

    Eigenvalues in [-PSD_CLAMP, 0) are treated as roundoff zeros; below
    -PSD_CLAMP raises NotPSD.  Eigenvalues under SQRT_RELATIVE_FLOOR
    relative to the largest are zeroed (see the constants table).
    """
    w, v = eig_hermitian(m)
    if w[0] < -PSD_CLAMP:
        raise NotPSD(f"matrix has eigenvalue {w[0]:.3e} < -{PSD_CLAMP:.0e}")
    floor = SQRT_RELATIVE_FLOOR * max(float(w[-1]), 0.0)
    w = np.where(w < floor, 0.0, w)
    r = (v * np.sqrt(w)) @ dagger(v)
    return (r + dagger(r)) / 2


def mat_exp_hermitian(m: np.ndarray) -> np.ndarray:
    """exp(M) for Hermitian M via the spectral decomposition."""
    w, v = eig_hermitian(m)
    r = (v * np.exp(w)) @ dagger(v)
    return (r + dagger(r)) / 2


def check_density_matrix(rho: np.ndarray, dim: int = 4) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Checks, in order: shape (dim x dim), Hermiticity, unit trace, and
    positive semidefiniteness (eigenvalues >= -PSD_CLAMP).  The raised
    NotADensityMatrix names the check that failed.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise NotADensityMatrix(f"expected shape ({dim}, {dim}), got {rho.shape}")
    if not is_hermitian(rho):
        raise NotADensityMatrix("matrix is not Hermitian within tolerance")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise NotADensityMatrix(f"trace is {tr:.12g}, not 1")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -PSD_CLAMP:
        raise NotADensityMatrix(f"matrix is not PSD (eigenvalue {w[0]:.3e})")
    return rho
