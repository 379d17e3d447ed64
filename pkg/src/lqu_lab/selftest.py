"""Self-test: the cross-module invariant suite at reduced grid density.

Every property is deterministic (fixed RNG seeds, no timing, no
timestamps), so the printed report body is byte-identical across runs.
Exit status 0 means every property passed.
"""

from __future__ import annotations

import math
import sys
from typing import Callable, TextIO

import numpy as np

from . import channels, linalg, lqu, model, sweep

_SEED = 20240811

_ENERGY_GRID = (0.25, 1.0, 2.5, 5.0)
_T_GRID = (0.05, 0.1, 0.5, 1.0)


def _rng() -> np.random.Generator:
    return np.random.default_rng(_SEED)


def _random_hermitian(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def _random_density(rng, dim=4):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def _random_qubit_unitary(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _check_eig_reconstruction():
    rng = _rng()
    for _ in range(25):
        m = _random_hermitian(rng)
        w, v = linalg.eig_hermitian(m)
        scale = 1.0 + np.max(np.abs(m))
        assert np.max(np.abs((v * w) @ v.conj().T - m)) <= linalg.EIG_RECONSTRUCTION_TOL * scale
        assert np.max(np.abs(v.conj().T @ v - np.eye(4))) <= 1e-10
        assert np.all(np.diff(w) >= 0)


def _check_sqrt_squares():
    rng = _rng()
    for _ in range(25):
        rho = _random_density(rng)
        r = linalg.mat_sqrt_psd(rho)
        assert np.max(np.abs(r @ r - rho)) <= linalg.SQRT_SQUARE_TOL


def _check_exp_zero_identity():
    e = linalg.mat_exp_hermitian(np.zeros((4, 4)))
    assert np.max(np.abs(e - np.eye(4))) <= 1e-14


def _check_kron_mixed_product():
    rng = _rng()
    for _ in range(20):
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        lhs = linalg.kron(a, b) @ linalg.kron(c, d)
        rhs = linalg.kron(a @ c, b @ d)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12


def _check_gibbs_analytic_vs_numeric():
    for ej in _ENERGY_GRID:
        for em in _ENERGY_GRID:
            for t in (0.01,) + _T_GRID:
                x = model.thermal_xstate(ej, em, t)
                rho = model.gibbs_state_numeric(model.build_hamiltonian_x(ej, ej, em), t)
                assert np.max(np.abs(x.to_matrix() - rho)) <= 1e-10


def _check_thermal_normalization_and_signs():
    for ej in _ENERGY_GRID:
        for em in _ENERGY_GRID:
            for t in (1e-4, 0.01, 1.0):
                x = model.thermal_xstate(ej, em, t)
                assert abs(x.aplus + x.aminus + 2 * x.b - 1.0) <= 1e-12
                assert x.c <= 0.0 and x.d <= 0.0  # em > 0 on this grid
                x.validate()


def _check_high_t_limit():
    for ej in _ENERGY_GRID:
        for em in _ENERGY_GRID:
            x = model.thermal_xstate(ej, em, 1e6)
            for v in (x.aplus, x.aminus, x.b):
                assert abs(v - 0.25) <= 1e-5
            assert abs(x.c) <= 1e-5 and abs(x.d) <= 1e-5


def _check_quadratic_form_identity():
    rng = _rng()
    for _ in range(10):
        rho = _random_density(rng)
        w = lqu.w_matrix(rho)
        for _ in range(20):
            n = rng.normal(size=3)
            n /= np.linalg.norm(n)
            assert abs(lqu.skew_information(rho, n) - (1.0 - n @ w @ n)) <= 1e-10


def _check_three_way_agreement():
    for ej in (0.25, 1.0, 2.0, 5.0):
        for em in (0.5, 1.5, 5.0):
            for t in (0.05, 0.2, 1.0):
                x = model.thermal_xstate(ej, em, t)
                closed = lqu.lqu_closed_xstate(x).lqu
                rho = model.gibbs_state_numeric(model.build_hamiltonian_x(ej, ej, em), t)
                numeric = lqu.lqu_numeric(rho)
                brute = lqu.lqu_bruteforce(rho, 512)
                assert abs(closed - numeric) <= 1e-9
                assert abs(numeric - brute) <= 2e-6


def _check_local_unitary_invariance():
    rng = _rng()
    for _ in range(8):
        rho = model.thermal_xstate(
            rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0), rng.uniform(0.05, 1.0)
        ).to_matrix()
        u = linalg.kron(_random_qubit_unitary(rng), _random_qubit_unitary(rng))
        rotated = u @ rho @ u.conj().T
        assert abs(lqu.lqu_numeric(rotated) - lqu.lqu_numeric(rho)) <= 1e-9


def _check_hadamard_frame_equivalence():
    h2 = linalg.kron(linalg.HADAMARD, linalg.HADAMARD)
    for ej, em, t in ((1.0, 1.0, 0.2), (2.0, 0.5, 0.1), (0.5, 3.0, 1.0)):
        h_tqs = model.build_hamiltonian_tqs(ej, ej, em)
        h_x = model.build_hamiltonian_x(ej, ej, em)
        assert np.max(np.abs(h2 @ h_tqs @ h2 - h_x)) <= 1e-12
        a = lqu.lqu_numeric(model.gibbs_state_numeric(h_tqs, t))
        b = lqu.lqu_numeric(model.gibbs_state_numeric(h_x, t))
        assert abs(a - b) <= 1e-9


def _check_range_and_lambda_order():
    for ej in _ENERGY_GRID:
        for em in _ENERGY_GRID:
            for t in _T_GRID:
                diag = lqu.lqu_closed_xstate(model.thermal_xstate(ej, em, t))
                assert 0.0 <= diag.lqu <= 1.0
                assert diag.lambda1 >= diag.lambda2 - 1e-12
                assert diag.gamma1 >= diag.gamma2 and diag.gamma3 >= diag.gamma4
                assert min(diag.gamma1, diag.gamma2, diag.gamma3, diag.gamma4) >= -1e-12


def _check_scale_invariance():
    for s in (0.5, 2.0, 10.0):
        for ej, em, t in ((1.0, 1.0, 0.2), (1.3, 0.8, 0.21), (0.6, 2.4, 0.7)):
            a = lqu.lqu_closed_xstate(model.thermal_xstate(ej, em, t)).lqu
            b = lqu.lqu_closed_xstate(model.thermal_xstate(s * ej, s * em, s * t)).lqu
            assert abs(a - b) <= 1e-10


def _check_zero_point():
    for t in (1e-4, 0.05, 1.0, 1e6):
        assert lqu.lqu_closed_xstate(model.thermal_xstate(0.0, 0.0, t)).lqu <= 1e-12


def _check_crossover_anchors():
    root = lqu.crossover_temperature(1.0, 1.0, 0.01, 1.0)
    assert root is not None and 0.10 <= root <= 0.20
    assert lqu.crossover_temperature(2.0, 1.0, 0.01, 1.0) is None
    assert lqu.crossover_temperature(1.0, 0.5, 0.01, 1.0) is None


def _check_kraus_closure():
    for kind in channels.CHANNEL_KINDS:
        for i in range(11):
            pair = channels.kraus_ops(channels.ChannelSpec(kind, i / 10))
            closure = pair.k1.conj().T @ pair.k1 + pair.k2.conj().T @ pair.k2
            assert np.max(np.abs(closure - np.eye(2))) <= channels.KRAUS_CLOSURE_TOL


def _check_channel_commuting_square():
    for ej, em in ((0.5, 1.0), (1.0, 1.0), (2.0, 0.5), (5.0, 5.0)):
        for t in (0.05, 1.0):
            x = model.thermal_xstate(ej, em, t)
            rho = x.to_matrix()
            for kind in channels.CHANNEL_KINDS:
                for p in (0.0, 0.3, 0.7, 1.0):
                    spec = channels.ChannelSpec(kind, p)
                    closed = channels.lqu_closed_channel(x, spec).lqu
                    numeric = lqu.lqu_numeric(channels.apply_channel(rho, spec, spec))
                    assert abs(closed - numeric) <= 1e-9


def _check_pf_symmetry():
    x = model.thermal_xstate(1.0, 1.0, 0.2)
    for i in range(11):
        p = i / 10
        a = channels.lqu_closed_channel(x, channels.ChannelSpec("pf", p)).lqu
        b = channels.lqu_closed_channel(x, channels.ChannelSpec("pf", 1 - p)).lqu
        assert abs(a - b) <= 1e-12
    assert channels.lqu_closed_channel(x, channels.ChannelSpec("pf", 0.5)).lqu <= 1e-9


def _check_ad_endpoints():
    for ej in _ENERGY_GRID:
        for t in (0.05, 1.0):
            x = model.thermal_xstate(ej, 1.0, t)
            assert channels.lqu_closed_channel(x, channels.ChannelSpec("ad", 1.0)).lqu <= 1e-12


def _check_pd_offdiagonal_scaling():
    x = model.thermal_xstate(1.5, 2.0, 0.3)
    for p in (0.1, 0.5, 0.9):
        y = channels.xstate_after_channel(x, channels.ChannelSpec("pd", p))
        assert y.aplus == x.aplus and y.aminus == x.aminus and y.b == x.b
        assert abs(y.c - x.c * (1 - p)) <= 1e-16 and abs(y.d - x.d * (1 - p)) <= 1e-16


def _check_sweep_determinism():
    spec = sweep.SweepSpec(
        axes=(sweep.SweepAxis("t", 0.05, 1.0, 12),),
        fixed={"ej": 1.0, "em": 1.0},
    )
    serial = sweep.run_sweep(spec, max_workers=1).to_csv()
    threaded = sweep.run_sweep(spec, max_workers=3).to_csv()
    repeat = sweep.run_sweep(spec, max_workers=1).to_csv()
    assert serial == threaded == repeat


_PROPERTIES: tuple[tuple[str, Callable[[], None]], ...] = (
    ("linalg.eig_hermitian_reconstruction", _check_eig_reconstruction),
    ("linalg.mat_sqrt_psd_squares", _check_sqrt_squares),
    ("linalg.mat_exp_zero_identity", _check_exp_zero_identity),
    ("linalg.kron_mixed_product", _check_kron_mixed_product),
    ("model.gibbs_analytic_vs_numeric", _check_gibbs_analytic_vs_numeric),
    ("model.thermal_normalization_and_signs", _check_thermal_normalization_and_signs),
    ("model.high_temperature_limit", _check_high_t_limit),
    ("model.hadamard_frame_equivalence", _check_hadamard_frame_equivalence),
    ("lqu.quadratic_form_identity", _check_quadratic_form_identity),
    ("lqu.three_way_agreement", _check_three_way_agreement),
    ("lqu.local_unitary_invariance", _check_local_unitary_invariance),
    ("lqu.range_and_lambda_order", _check_range_and_lambda_order),
    ("lqu.scale_invariance", _check_scale_invariance),
    ("lqu.zero_point", _check_zero_point),
    ("lqu.crossover_anchors", _check_crossover_anchors),
    ("channels.kraus_closure", _check_kraus_closure),
    ("channels.closed_vs_kraus_equivalence", _check_channel_commuting_square),
    ("channels.pf_symmetry_and_midpoint_zero", _check_pf_symmetry),
    ("channels.ad_terminal_point", _check_ad_endpoints),
    ("channels.pd_offdiagonal_scaling", _check_pd_offdiagonal_scaling),
    ("sweep.csv_determinism", _check_sweep_determinism),
)


def run_selftest(stream: TextIO | None = None) -> int:
    """Run every property, print one PASS/FAIL line each; 0 iff all pass."""
    out = stream if stream is not None else sys.stdout
    failures = 0
    for name, check in _PROPERTIES:
        try:
            check()
        except AssertionError as exc:
            failures += 1
            detail = f": {exc}" if str(exc) else ""
            print(f"FAIL {name}{detail}", file=out)
        else:
            print(f"PASS {name}", file=out)
    total = len(_PROPERTIES)
    verdict = "PASS" if failures == 0 else "FAIL"
    print(f"SELFTEST {verdict} ({total - failures}/{total})", file=out)
    return 0 if failures == 0 else 1
