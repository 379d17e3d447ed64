"""Local quantum uncertainty (LQU) of two-qubit states, three ways.

LQU is the minimum Wigner-Yanase skew information over local observables
on qubit A:

    LQU(rho) = min_n I(rho, n.sigma (x) I),
    I(rho, K) = -1/2 Tr{ [sqrt(rho), K]^2 }

For K = n.sigma with unit n, K^2 = I and the skew information is the
quadratic form

    I(rho, n.sigma (x) I) = 1 - n . W n,
    W_ij = Re Tr{ sqrt(rho) (sigma_i (x) I) sqrt(rho) (sigma_j (x) I) }

so LQU(rho) = 1 - lambda_max(W).  This identity *defines* W here: any
candidate W construction must reproduce 1 - skew information as a
quadratic form in n, which pins normalization and ordering conventions
unambiguously (and is exercised as a property test).

Restricting the observable to K = n.sigma loses nothing: for a general
local observable K = a I + b n.sigma the identity commutes out of the
commutator, so I(rho, K (x) I) = b^2 I(rho, n.sigma (x) I).  A
non-degenerate spectrum requires b != 0, and normalizing the spectrum to
{a - b, a + b} with |b| = 1 makes the minimization over K exactly the
minimization over unit directions n.

Three routes are implemented:

* lqu_closed_xstate - closed form for X states via the 2x2 block
  eigenvalues (gammas) and the diagonal W entries (lambdas);
* lqu_numeric      - eigenvalues of the W matrix built from sqrt(rho);
* lqu_bruteforce   - direct minimization of the skew information over a
  deterministic Fibonacci sphere, polished by golden-section line
  searches along great circles.

The numeric and brute-force routes are oracles for the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ID2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SQRT_RELATIVE_FLOOR,
    check_density_matrix,
    kron,
    mat_sqrt_psd,
)
from .model import XStateParams

#: Unit-vector tolerance for skew-information directions
UNIT_DIRECTION_TOL = 1e-12

#: Imaginary parts / asymmetry of the W-defining traces must stay below this
W_REALITY_TOL = 1e-10

#: (sqrt(g1)+sqrt(g2))(sqrt(g3)+sqrt(g4)) below this triggers the
#: numeric-W fallback: the closed-form lambdas divide by it.
DEGENERATE_DENOMINATOR_TOL = 1e-14

#: |lambda1 - lambda3| below this flags a crossover in the diagnostics
CROSSOVER_FLAG_TOL = 1e-12

#: Minimum sphere resolution accepted by lqu_bruteforce
MIN_BRUTEFORCE_RESOLUTION = 64

#: sigma_i (x) I for i in (x, y, z), the A-side measurement generators
_SIGMA_A = np.stack([kron(PAULI_X, ID2), kron(PAULI_Y, ID2), kron(PAULI_Z, ID2)])

_GOLDEN_RATIO_CONJ = (math.sqrt(5.0) - 1.0) / 2.0


class NonUnitDirection(ValueError):
    """Direction vector for the skew information is not normalized."""


@dataclass(frozen=True)
class ClosedFormDiagnostics:
    """Closed-form LQU of an X state plus everything computed on the way.

    lambda1/2/3 are the diagonal W entries (lambda2 never enters the final
    value but is reported for completeness); gamma1..gamma4 are the 2x2
    block eigenvalues of the state.  When the lambda denominators
    degenerate (near-pure states) the lambdas are read off the numeric W
    instead and `fallback` is set.  `crossover` flags |l1 - l3| below
    CROSSOVER_FLAG_TOL; the max() in the LQU is continuous there, so the
    value itself is unaffected.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    lqu: float
    fallback: bool = False
    crossover: bool = False


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def w_matrix(rho: np.ndarray) -> np.ndarray:
    """3x3 symmetric W with W_ij = Re Tr{sqrt(rho) sA_i sqrt(rho) sA_j}.

    Indices are ordered (x, y, z).  The defining traces are real for
    Hermitian inputs; this is asserted (W_REALITY_TOL) before the
    imaginary parts are discarded, as is symmetry before symmetrizing.
    """
    rho = check_density_matrix(rho)
    r = mat_sqrt_psd(rho)
    rs = [r @ s for s in _SIGMA_A]
    w = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            tr = np.trace(rs[i] @ rs[j])
            if abs(tr.imag) > W_REALITY_TOL:
                raise AssertionError(
                    f"W[{i}][{j}] trace has imaginary part {tr.imag:.3e}"
                )
            w[i, j] = w[j, i] = tr.real
    return w


def skew_information(rho: np.ndarray, n: np.ndarray) -> float:
    """Wigner-Yanase skew information -1/2 Tr{[sqrt(rho), K (x) I]^2}.

    K = n . sigma for a unit 3-vector n (NonUnitDirection otherwise).
    """
    rho = check_density_matrix(rho)
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > UNIT_DIRECTION_TOL:
        raise NonUnitDirection(f"n must be a unit 3-vector, got {n!r}")
    r = mat_sqrt_psd(rho)
    return _skew_from_sqrt(r, n)


def _skew_from_sqrt(r: np.ndarray, n: np.ndarray) -> float:
    k = np.tensordot(n, _SIGMA_A, axes=1)
    c = r @ k - k @ r
    return float(-0.5 * np.trace(c @ c).real)


def lqu_numeric(rho: np.ndarray) -> float:
    """LQU as 1 minus the largest eigenvalue of the W matrix, in [0, 1]."""
    w = w_matrix(rho)
    return _clamp01(1.0 - float(np.linalg.eigvalsh(w)[-1]))


# ---------------------------------------------------------------------------
# Brute-force route: Fibonacci sphere + golden-section great-circle polish
# ---------------------------------------------------------------------------


def _fibonacci_sphere(n: int) -> np.ndarray:
    """n deterministic, nearly uniform unit vectors."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    phi = i * (math.pi * (3.0 - math.sqrt(5.0)))
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _tangent_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    seed = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = seed - n * (seed @ n)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


def _golden_circle_min(
    r: np.ndarray,
    n: np.ndarray,
    e: np.ndarray,
    f_at_n: float,
    half_width: float = math.pi / 4,
    iters: int = 60,
) -> tuple[np.ndarray, float]:
    """Golden-section minimization along the great circle cos(t) n + sin(t) e.

    Tracks the best value over every evaluation (endpoints included), so
    the result never exceeds f_at_n even if the restriction is not
    unimodal on the window.
    """

    def g(t: float) -> float:
        return _skew_from_sqrt(r, math.cos(t) * n + math.sin(t) * e)

    a, b = -half_width, half_width
    best_t, best_f = 0.0, f_at_n
    c1 = b - _GOLDEN_RATIO_CONJ * (b - a)
    c2 = a + _GOLDEN_RATIO_CONJ * (b - a)
    f1, f2 = g(c1), g(c2)
    for t, f in ((a, g(a)), (b, g(b)), (c1, f1), (c2, f2)):
        if f < best_f:
            best_t, best_f = t, f
    for _ in range(iters):
        if f1 < f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - _GOLDEN_RATIO_CONJ * (b - a)
            f1 = g(c1)
            if f1 < best_f:
                best_t, best_f = c1, f1
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + _GOLDEN_RATIO_CONJ * (b - a)
            f2 = g(c2)
            if f2 < best_f:
                best_t, best_f = c2, f2
    n_new = math.cos(best_t) * n + math.sin(best_t) * e
    return n_new / np.linalg.norm(n_new), best_f


def lqu_bruteforce(rho: np.ndarray, resolution: int = 4096) -> float:
    """LQU by scanning skew information over a Fibonacci sphere.

    `resolution` grid directions (>= MIN_BRUTEFORCE_RESOLUTION) are
    evaluated through the commutator definition directly; the grid argmin
    (ties broken by the smallest index) seeds a local golden-section
    polish: per sweep, line minimizations along two tangent great circles
    plus the accumulated-displacement circle, until the value stops
    improving.  Fully deterministic.
    """
    if resolution < MIN_BRUTEFORCE_RESOLUTION:
        raise ValueError(
            f"resolution must be >= {MIN_BRUTEFORCE_RESOLUTION}, got {resolution}"
        )
    rho = check_density_matrix(rho)
    r = mat_sqrt_psd(rho)

    dirs = _fibonacci_sphere(resolution)
    k = np.einsum("mi,iab->mab", dirs, _SIGMA_A)
    c = np.einsum("ab,mbc->mac", r, k) - np.einsum("mab,bc->mac", k, r)
    vals = -0.5 * np.einsum("mab,mba->m", c, c).real
    i0 = int(np.argmin(vals))  # first occurrence: smallest grid index
    n, f = dirs[i0].copy(), float(vals[i0])

    for _ in range(12):
        n_prev, f_prev = n.copy(), f
        e1, _ = _tangent_frame(n)
        n, f = _golden_circle_min(r, n, e1, f)
        _, e2 = _tangent_frame(n)
        n, f = _golden_circle_min(r, n, e2, f)
        d = n - n_prev
        d -= n * (d @ n)
        norm_d = np.linalg.norm(d)
        if norm_d > 1e-12:
            n, f = _golden_circle_min(r, n, d / norm_d, f)
        if f_prev - f < 1e-15:
            break
    return _clamp01(f)


# ---------------------------------------------------------------------------
# Closed form for X states
# ---------------------------------------------------------------------------


def _block_eigenvalues(x: XStateParams) -> tuple[float, float, float, float]:
    """Eigenvalues (g1 >= g2, g3 >= g4) of the two 2x2 blocks of an X state.

    The small roots are computed from the block determinants
    (g2 = det/g1) rather than by subtraction, and anything below the
    relative floor used by mat_sqrt_psd is zeroed, so that the closed
    form and the numeric W route resolve near-null subspaces identically.
    """
    g1 = (x.aplus + x.aminus + math.sqrt((x.aplus - x.aminus) ** 2 + 4 * x.c**2)) / 2
    g3 = x.b + abs(x.d)
    g2 = (x.aplus * x.aminus - x.c**2) / g1 if g1 > 0.0 else 0.0
    g4 = (x.b**2 - x.d**2) / g3 if g3 > 0.0 else 0.0
    floor = SQRT_RELATIVE_FLOOR * max(g1, g3)
    if g2 < floor:
        g2 = 0.0
    if g4 < floor:
        g4 = 0.0
    return g1, g2, g3, g4


def lqu_closed_xstate(x: XStateParams) -> ClosedFormDiagnostics:
    """Closed-form LQU of an X state with full diagnostics.

    With s12 = sqrt(g1) + sqrt(g2) and s34 = sqrt(g3) + sqrt(g4):

        l1 = s12 s34 + 4|c d| / (s12 s34)
        l2 = s12 s34 - 4|c d| / (s12 s34)
        l3 = 1/2 [ s12^2 + s34^2 + ((a- - a+)^2 - 4 c^2)/s12^2
                   - 4 d^2 / s34^2 ]
        LQU = 1 - max(l1, l3)

    When s12 s34 < DEGENERATE_DENOMINATOR_TOL the lambdas are read off
    the numeric W diagonal of the reconstructed matrix instead (the state
    is then numerically pure in one block) and `fallback` is set.
    """
    x.validate()
    g1, g2, g3, g4 = _block_eigenvalues(x)
    s12 = math.sqrt(max(g1, 0.0)) + math.sqrt(max(g2, 0.0))
    s34 = math.sqrt(max(g3, 0.0)) + math.sqrt(max(g4, 0.0))
    den = s12 * s34

    if den < DEGENERATE_DENOMINATOR_TOL:
        w = w_matrix(x.to_matrix())
        lam = np.linalg.eigvalsh(w)
        l1, l2, l3 = float(w[0, 0]), float(w[1, 1]), float(w[2, 2])
        lqu = _clamp01(1.0 - float(lam[-1]))
        return ClosedFormDiagnostics(
            lambda1=l1, lambda2=l2, lambda3=l3,
            gamma1=g1, gamma2=g2, gamma3=g3, gamma4=g4,
            lqu=lqu, fallback=True,
            crossover=abs(l1 - l3) <= CROSSOVER_FLAG_TOL,
        )

    cross_term = 4.0 * abs(x.c * x.d) / den
    l1 = den + cross_term
    l2 = den - cross_term
    l3 = 0.5 * (
        s12**2
        + s34**2
        + ((x.aminus - x.aplus) ** 2 - 4 * x.c**2) / s12**2
        - 4 * x.d**2 / s34**2
    )
    return ClosedFormDiagnostics(
        lambda1=l1, lambda2=l2, lambda3=l3,
        gamma1=g1, gamma2=g2, gamma3=g3, gamma4=g4,
        lqu=_clamp01(1.0 - max(l1, l3)),
        fallback=False,
        crossover=abs(l1 - l3) <= CROSSOVER_FLAG_TOL,
    )


# ---------------------------------------------------------------------------
# lambda1 / lambda3 crossover temperature
# ---------------------------------------------------------------------------

#: Scan points used to bracket sign changes of lambda1 - lambda3
_CROSSOVER_SCAN_POINTS = 512

#: Bisection is run until the bracket is this narrow
_CROSSOVER_BRACKET_WIDTH = 2e-7


def crossover_temperature(
    ej: float, em: float, t_lo: float, t_hi: float
) -> float | None:
    """Temperature in [t_lo, t_hi] where lambda1 and lambda3 cross.

    The interval is scanned on a fixed grid; the first sign change of
    lambda1(T) - lambda3(T) is refined by bisection to well within 1e-6.
    Returns None when no sign change exists on the interval (that is the
    no-crossover signal, not an error).
    """
    from .model import check_temperature, thermal_xstate

    t_lo = check_temperature(t_lo)
    t_hi = check_temperature(t_hi)
    if not t_lo < t_hi:
        raise ValueError(f"need t_lo < t_hi, got {t_lo!r} >= {t_hi!r}")

    def gap(t: float) -> float:
        diag = lqu_closed_xstate(thermal_xstate(ej, em, t))
        return diag.lambda1 - diag.lambda3

    ts = np.linspace(t_lo, t_hi, _CROSSOVER_SCAN_POINTS)
    gaps = [gap(float(t)) for t in ts]
    for i in range(len(ts) - 1):
        if gaps[i] == 0.0:
            return float(ts[i])
        if gaps[i] * gaps[i + 1] < 0.0:
            lo, hi, g_lo = float(ts[i]), float(ts[i + 1]), gaps[i]
            while hi - lo > _CROSSOVER_BRACKET_WIDTH:
                mid = (lo + hi) / 2
                g_mid = gap(mid)
                if g_lo * g_mid <= 0.0:
                    hi = mid
                else:
                    lo, g_lo = mid, g_mid
            return (lo + hi) / 2
    if gaps[-1] == 0.0:
        return float(ts[-1])
    return None
