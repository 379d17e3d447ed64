"""Amplitude-damping, phase-flip and phase-damping channels on two qubits.

Each single-qubit channel is a Kraus pair {K1, K2} with
K1^dag K1 + K2^dag K2 = I, applied independently to both qubits:

    rho -> sum_ij (Ki (x) Kj) rho (Ki (x) Kj)^dag

X states stay X states under all three channels when the same channel
acts on both qubits, so the post-channel LQU has the same closed form
with transformed entries (xstate_after_channel + lqu_closed_xstate).
The Kraus route (apply_channel + lqu_numeric) is the oracle for that
composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import ID2, check_density_matrix, dagger, kron
from .lqu import ClosedFormDiagnostics, lqu_closed_xstate
from .model import XStateParams

AD = "ad"  # amplitude damping: energy dissipation into the environment
PF = "pf"  # phase flip: sigma_z applied with some probability
PD = "pd"  # phase damping: phase information loss without energy loss

CHANNEL_KINDS = (AD, PF, PD)

#: Kraus closure K1+K1 + K2+K2 = I must hold to this
KRAUS_CLOSURE_TOL = 1e-12


class KrausPair(NamedTuple):
    k1: np.ndarray
    k2: np.ndarray


@dataclass(frozen=True)
class ChannelSpec:
    """A decoherence channel kind plus its parameter p in [0, 1]."""

    kind: str
    p: float

    def __post_init__(self) -> None:
        if self.kind not in CHANNEL_KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}, expected one of {CHANNEL_KINDS}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"decoherence parameter p must be in [0, 1], got {self.p!r}")


def kraus_ops(spec: ChannelSpec) -> KrausPair:
    """Kraus operators of the single-qubit channel."""
    p = spec.p
    if spec.kind == AD:
        k1 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
        k2 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=complex)
    elif spec.kind == PF:
        k1 = math.sqrt(p) * ID2
        k2 = math.sqrt(1.0 - p) * np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    else:  # PD
        k1 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=complex)
        k2 = np.array([[0.0, 0.0], [0.0, math.sqrt(p)]], dtype=complex)
    return KrausPair(k1, k2)


def apply_channel(rho: np.ndarray, spec_a: ChannelSpec, spec_b: ChannelSpec) -> np.ndarray:
    """sum_ij (Ki (x) Kj) rho (Ki (x) Kj)^dag with independent local channels."""
    rho = check_density_matrix(rho)
    ka = kraus_ops(spec_a)
    kb = kraus_ops(spec_b)
    out = np.zeros_like(rho)
    for ki in ka:
        for kj in kb:
            k = kron(ki, kj)
            out += k @ rho @ dagger(k)
    return (out + dagger(out)) / 2


def xstate_after_channel(x: XStateParams, spec: ChannelSpec) -> XStateParams:
    """X-state entries after the same channel acts on both qubits.

    AD:  (a+, a-, b, c, d) -> (d1, d3, d2, c(1-p), d(1-p)) with
         d1 = a+ + p(2b + a- p),  d2 = (1-p)(b + a- p),  d3 = a- (1-p)^2
    PF:  off-diagonals scale by (1-2p)^2, diagonals unchanged
    PD:  off-diagonals scale by (1-p), diagonals unchanged
    """
    x.validate()
    p = spec.p
    if spec.kind == AD:
        return XStateParams(
            aplus=x.aplus + p * (2.0 * x.b + x.aminus * p),
            aminus=x.aminus * (1.0 - p) ** 2,
            b=(1.0 - p) * (x.b + x.aminus * p),
            c=x.c * (1.0 - p),
            d=x.d * (1.0 - p),
        )
    if spec.kind == PF:
        f = (1.0 - 2.0 * p) ** 2
        return XStateParams(x.aplus, x.aminus, x.b, x.c * f, x.d * f)
    return XStateParams(x.aplus, x.aminus, x.b, x.c * (1.0 - p), x.d * (1.0 - p))


def lqu_closed_channel(x: XStateParams, spec: ChannelSpec) -> ClosedFormDiagnostics:
    """Closed-form LQU after the channel, with channel-specific diagnostics.

    The transformed entries feed the same lambda/gamma formulas as the
    undamped state, so this is exactly lqu_closed_xstate composed with
    xstate_after_channel.  (A literal per-channel transcription of the
    third lambda would drop a factor of c in one term for PF; the
    composition keeps it, and the Kraus-route equivalence test is the
    arbiter.)
    """
    return lqu_closed_xstate(xstate_after_channel(x, spec))
