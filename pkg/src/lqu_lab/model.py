"""Two coupled superconducting charge qubits and their thermal state.

The system Hamiltonian is

    H_tqs = -1/2 [ Ej1 sx(x)I + Ej2 I(x)sx - 2 Em sz(x)sz ]

with Josephson energies Ej1, Ej2 and mutual coupling energy Em (all in one
dimensionless energy unit, k_B = 1).  For equal Josephson energies a local
Hadamard rotation on both qubits brings it to the X form

    H_x = [[-Ej, 0, 0, Em],
           [  0, 0, Em,  0],
           [  0, Em, 0,  0],
           [ Em, 0, 0,  Ej]]

whose Gibbs state exp(-H/T)/Z is an X-shaped density matrix with entries

    a_pm = [cosh(alpha/T) +- Ej sinh(alpha/T)/alpha] / Z
    b    = cosh(Em/T) / Z
    c    = -Em sinh(alpha/T) / (alpha Z)
    d    = -sinh(Em/T) / Z
    Z    = 2 [cosh(alpha/T) + cosh(Em/T)],   alpha = sqrt(Em^2 + Ej^2)

thermal_xstate evaluates these in overflow-safe form; gibbs_state_numeric
is the independent numerical route used to cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ID2,
    PAULI_X,
    PAULI_Z,
    eig_hermitian,
    dagger,
    kron,
    require_hermitian,
)

#: Temperatures below this are rejected: double precision cannot separate
#: the Gibbs state from the ground-state projector there anyway.
TEMPERATURE_FLOOR = 1e-4

#: Below this value of alpha/T the term sinh(x)/x switches to its series
#: 1 + x^2/6 (relative error < 1e-16 at the switch point).
SINHC_SERIES_SWITCH = 1e-8

#: XStateParams entry-level tolerances
XSTATE_NORM_TOL = 1e-12
XSTATE_PSD_TOL = 1e-12


class TemperatureOutOfRange(ValueError):
    """Temperature is not finite or lies below TEMPERATURE_FLOOR."""


class UnequalJosephsonEnergies(ValueError):
    """The X-form Hamiltonian requires ej1 == ej2."""


class InvalidXState(ValueError):
    """XStateParams violate normalization or block positivity."""


def check_temperature(t: float) -> float:
    """Validate a temperature (k_B = 1) at the API boundary."""
    t = float(t)
    if not math.isfinite(t) or t < TEMPERATURE_FLOOR:
        raise TemperatureOutOfRange(
            f"temperature {t!r} is below the floor {TEMPERATURE_FLOOR}"
        )
    return t


def build_hamiltonian_tqs(ej1: float, ej2: float, em: float) -> np.ndarray:
    """Charge-basis Hamiltonian -1/2 [ej1 sx(x)I + ej2 I(x)sx - 2 em sz(x)sz]."""
    h = -0.5 * (
        ej1 * kron(PAULI_X, ID2)
        + ej2 * kron(ID2, PAULI_X)
        - 2.0 * em * kron(PAULI_Z, PAULI_Z)
    )
    return h


def build_hamiltonian_x(ej1: float, ej2: float, em: float) -> np.ndarray:
    """X-form Hamiltonian after the two-qubit Hadamard rotation.

    Requires ej1 == ej2 (the rotation only produces the X form for equal
    Josephson energies); raises UnequalJosephsonEnergies otherwise.
    """
    if ej1 != ej2:
        raise UnequalJosephsonEnergies(
            f"X-form Hamiltonian needs ej1 == ej2, got {ej1!r} and {ej2!r}"
        )
    ej = float(ej1)
    em = float(em)
    return np.array(
        [
            [-ej, 0.0, 0.0, em],
            [0.0, 0.0, em, 0.0],
            [0.0, em, 0.0, 0.0],
            [em, 0.0, 0.0, ej],
        ],
        dtype=complex,
    )


def gibbs_state_numeric(h: np.ndarray, t: float) -> np.ndarray:
    """Thermal state exp(-h/T) / Tr[exp(-h/T)] of a Hermitian h.

    The spectrum is shifted by its minimum before exponentiating; the
    shift cancels in the ratio and avoids overflow at low temperature.
    """
    t = check_temperature(t)
    w, v = eig_hermitian(require_hermitian(h, "hamiltonian"))
    weights = np.exp(-(w - w[0]) / t)
    rho = (v * weights) @ dagger(v) / weights.sum()
    return (rho + dagger(rho)) / 2


@dataclass(frozen=True)
class XStateParams:
    """The five real entries of an X-shaped two-qubit density matrix.

    Layout (basis 00, 01, 10, 11):

        [[aplus, 0, 0, c],
         [0,     b, d, 0],
         [0,     d, b, 0],
         [c,     0, 0, aminus]]
    """

    aplus: float
    aminus: float
    b: float
    c: float
    d: float

    def validate(self) -> "XStateParams":
        """Check normalization and 2x2-block positivity; raise InvalidXState."""
        norm = self.aplus + self.aminus + 2 * self.b
        if abs(norm - 1.0) > XSTATE_NORM_TOL:
            raise InvalidXState(f"trace is {norm!r}, not 1")
        if min(self.aplus, self.aminus, self.b) < -XSTATE_PSD_TOL:
            raise InvalidXState("negative diagonal entry")
        if self.aplus * self.aminus - self.c**2 < -XSTATE_PSD_TOL:
            raise InvalidXState("outer block (aplus, aminus, c) is not PSD")
        if self.b**2 - self.d**2 < -XSTATE_PSD_TOL:
            raise InvalidXState("inner block (b, d) is not PSD")
        return self

    def to_matrix(self) -> np.ndarray:
        """Dense 4x4 complex density matrix with this X layout."""
        return np.array(
            [
                [self.aplus, 0.0, 0.0, self.c],
                [0.0, self.b, self.d, 0.0],
                [0.0, self.d, self.b, 0.0],
                [self.c, 0.0, 0.0, self.aminus],
            ],
            dtype=complex,
        )


def xstate_from_matrix(rho: np.ndarray, atol: float = 1e-10) -> XStateParams:
    """Extract XStateParams from a matrix that has the X layout.

    Raises InvalidXState if any entry outside the X pattern exceeds atol,
    or if the pattern is not symmetric the way an X state must be.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidXState(f"expected a 4x4 matrix, got shape {rho.shape}")
    mask = np.zeros((4, 4), dtype=bool)
    for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
        mask[i, j] = True
    stray = np.max(np.abs(rho[~mask])) if (~mask).any() else 0.0
    if stray > atol:
        raise InvalidXState(f"entry outside the X pattern has magnitude {stray:.3e}")
    if np.max(np.abs(rho[mask].imag)) > atol:
        raise InvalidXState("X-pattern entries are not real")
    if abs(rho[1, 1] - rho[2, 2]) > atol or abs(rho[0, 3] - rho[3, 0]) > atol \
            or abs(rho[1, 2] - rho[2, 1]) > atol:
        raise InvalidXState("X-pattern entries lack the required symmetry")
    return XStateParams(
        aplus=float(rho[0, 0].real),
        aminus=float(rho[3, 3].real),
        b=float((rho[1, 1].real + rho[2, 2].real) / 2),
        c=float((rho[0, 3].real + rho[3, 0].real) / 2),
        d=float((rho[1, 2].real + rho[2, 1].real) / 2),
    )


def thermal_xstate(ej: float, em: float, t: float) -> XStateParams:
    """Closed-form thermal X state at temperature t for equal Josephson ej.

    Hyperbolic terms are rescaled by exp(-m/T), m = max(alpha, |Em|), so
    every exponential has a nonpositive argument; cosh(Em/T) would
    otherwise overflow around Em/T ~ 710 (e.g. Em = 5 at low temperature,
    or any energy at the T = 1e-4 floor).
    """
    t = check_temperature(t)
    ej = float(ej)
    em = float(em)
    alpha = math.hypot(ej, em)
    u = alpha / t
    v = em / t
    m = max(u, abs(v))  # u >= |v| always; kept explicit for clarity

    exp_pu = math.exp(u - m)
    exp_nu = math.exp(-u - m)
    exp_pv = math.exp(v - m)
    exp_nv = math.exp(-v - m)
    cosh_u = (exp_pu + exp_nu) / 2  # cosh(u) * exp(-m), etc.
    sinh_u = (exp_pu - exp_nu) / 2
    cosh_v = (exp_pv + exp_nv) / 2
    sinh_v = (exp_pv - exp_nv) / 2
    z = 2 * (cosh_u + cosh_v)

    # sinh(alpha/T)/alpha = sinhc(u)/T, series below the switch point
    if u >= SINHC_SERIES_SWITCH:
        sinhc_u = sinh_u / u
    else:
        sinhc_u = (1.0 + u * u / 6.0) * math.exp(-m)

    return XStateParams(
        aplus=(cosh_u + ej * sinhc_u / t) / z,
        aminus=(cosh_u - ej * sinhc_u / t) / z,
        b=cosh_v / z,
        c=-em * sinhc_u / t / z,
        d=-sinh_v / z,
    )
