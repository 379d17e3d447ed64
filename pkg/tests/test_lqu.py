import numpy as np
import pytest

from lqu_lab.linalg import NotADensityMatrix, kron
from lqu_lab.lqu import (
    NonUnitDirection,
    crossover_temperature,
    lqu_bruteforce,
    lqu_closed_xstate,
    lqu_numeric,
    skew_information,
    w_matrix,
)
from lqu_lab.model import (
    TemperatureOutOfRange,
    XStateParams,
    build_hamiltonian_tqs,
    build_hamiltonian_x,
    gibbs_state_numeric,
    thermal_xstate,
)

from conftest import random_density, random_qubit_unitary

#: frozen from this implementation after the trivial rows below validated it
SKEW_Z_THERMAL_1_1_T01 = 0.5078180569893744

MAX_MIX = np.eye(4, dtype=complex) / 4

KET00 = np.zeros((4, 4), dtype=complex)
KET00[0, 0] = 1.0

EZ = np.array([0.0, 0.0, 1.0])
EX = np.array([1.0, 0.0, 0.0])


class TestWMatrix:
    def test_maximally_mixed(self):
        # n.W.n = 1 - skew = 1 for every unit n at I/4, so W must be the
        # identity (and the LQU zero, matching the zero-coupling point)
        assert np.max(np.abs(w_matrix(MAX_MIX) - np.eye(3))) <= 1e-12

    def test_product_pure_state(self):
        assert np.max(np.abs(w_matrix(KET00) - np.diag([0.0, 0.0, 1.0]))) <= 1e-12

    def test_bell_state(self, bell_state):
        assert np.max(np.abs(w_matrix(bell_state))) <= 1e-12

    def test_symmetric_with_bounded_eigenvalues(self, rng):
        for _ in range(25):
            w = w_matrix(random_density(rng))
            assert np.max(np.abs(w - w.T)) <= 1e-10
            eig = np.linalg.eigvalsh(w)
            assert eig[0] >= -1e-10 and eig[-1] <= 1.0 + 1e-10

    def test_rejects_invalid_state(self):
        with pytest.raises(NotADensityMatrix):
            w_matrix(np.eye(4))


class TestSkewInformation:
    def test_maximally_mixed_commutes_with_everything(self, rng):
        for _ in range(5):
            n = rng.normal(size=3)
            n /= np.linalg.norm(n)
            assert abs(skew_information(MAX_MIX, n)) <= 1e-14

    def test_product_state_commuting_vs_anticommuting(self):
        assert abs(skew_information(KET00, EZ)) <= 1e-14
        assert abs(skew_information(KET00, EX) - 1.0) <= 1e-14

    def test_frozen_thermal_regression(self):
        rho = thermal_xstate(1.0, 1.0, 0.1).to_matrix()
        assert abs(skew_information(rho, EZ) - SKEW_Z_THERMAL_1_1_T01) <= 1e-12

    def test_quadratic_form_identity_defines_w(self, rng):
        # this identity is the W construction's ground truth
        for _ in range(10):
            rho = random_density(rng)
            w = w_matrix(rho)
            for _ in range(10):
                n = rng.normal(size=3)
                n /= np.linalg.norm(n)
                assert abs(skew_information(rho, n) - (1.0 - n @ w @ n)) <= 1e-10

    def test_rejects_non_unit_direction(self):
        with pytest.raises(NonUnitDirection):
            skew_information(MAX_MIX, np.array([1.0, 1.0, 0.0]))


class TestLquNumeric:
    def test_maximally_mixed_is_zero(self):
        assert lqu_numeric(MAX_MIX) == 0.0

    def test_bell_state_is_one(self, bell_state):
        assert abs(lqu_numeric(bell_state) - 1.0) <= 1e-12

    def test_three_way_agreement_at_point(self):
        rho = thermal_xstate(1.0, 1.0, 0.1).to_matrix()
        numeric = lqu_numeric(rho)
        closed = lqu_closed_xstate(thermal_xstate(1.0, 1.0, 0.1)).lqu
        brute = lqu_bruteforce(rho, 4096)
        assert abs(closed - numeric) <= 1e-9
        assert abs(numeric - brute) <= 2e-6

    def test_range(self, rng):
        for _ in range(25):
            assert 0.0 <= lqu_numeric(random_density(rng)) <= 1.0


class TestLquBruteforce:
    def test_maximally_mixed(self):
        assert lqu_bruteforce(MAX_MIX, 64) == 0.0

    def test_bell_state(self, bell_state):
        assert abs(lqu_bruteforce(bell_state, 64) - 1.0) <= 1e-12

    def test_agrees_with_numeric_on_random_x_states(self, rng):
        for _ in range(10):
            x = thermal_xstate(
                rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0), rng.uniform(0.05, 1.0)
            )
            rho = x.to_matrix()
            assert abs(lqu_bruteforce(rho, 4096) - lqu_numeric(rho)) <= 2e-6

    def test_monotone_nonincreasing_in_resolution(self):
        rho = thermal_xstate(1.2, 0.9, 0.13).to_matrix()
        vals = [lqu_bruteforce(rho, r) for r in (64, 128, 256, 1024, 4096)]
        for lo, hi in zip(vals[1:], vals[:-1]):
            assert lo <= hi + 1e-12

    def test_deterministic(self, rng):
        rho = random_density(rng)
        assert lqu_bruteforce(rho, 256) == lqu_bruteforce(rho, 256)

    def test_rejects_low_resolution(self):
        with pytest.raises(ValueError):
            lqu_bruteforce(MAX_MIX, 32)


class TestLquClosedXState:
    def test_maximally_mixed_point(self):
        d = lqu_closed_xstate(XStateParams(0.25, 0.25, 0.25, 0.0, 0.0))
        assert d.gamma1 == d.gamma2 == d.gamma3 == d.gamma4 == 0.25
        assert d.lambda1 == d.lambda2 == d.lambda3 == 1.0
        assert d.lqu == 0.0
        assert not d.fallback

    def test_bell_like_pure_state_uses_fallback(self):
        d = lqu_closed_xstate(XStateParams(0.5, 0.5, 0.0, -0.5, 0.0))
        assert d.gamma1 == 1.0 and d.gamma2 == 0.0
        assert d.gamma3 == 0.0 and d.gamma4 == 0.0
        assert d.fallback
        assert abs(d.lqu - 1.0) <= 1e-12
        assert abs(d.lambda1) <= 1e-12

    def test_thermal_near_sudden_transition(self):
        x = thermal_xstate(1.0, 1.0, 0.15)
        d = lqu_closed_xstate(x)
        numeric = lqu_numeric(x.to_matrix())
        assert abs(d.lqu - numeric) <= 1e-9
        # the lambda1/lambda3 crossover responsible for the kink sits nearby
        assert abs(d.lambda1 - d.lambda3) < 0.1

    def test_lambda_ordering_and_consistency(self):
        for ej in [0.25, 1.0, 2.0, 5.0]:
            for em in [0.25, 1.0, 5.0]:
                for t in [0.05, 0.2, 1.0]:
                    d = lqu_closed_xstate(thermal_xstate(ej, em, t))
                    assert d.lambda1 >= d.lambda2 - 1e-12
                    assert d.gamma1 >= d.gamma2 and d.gamma3 >= d.gamma4
                    assert min(d.gamma1, d.gamma2, d.gamma3, d.gamma4) >= -1e-12
                    assert 0.0 <= d.lqu <= 1.0
                    if not d.fallback:
                        assert abs(d.lqu - (1.0 - max(d.lambda1, d.lambda3))) <= 1e-14


class TestThreeWayAgreement:
    @pytest.mark.parametrize("t", [0.05, 0.1, 0.2, 0.5, 1.0])
    def test_reduced_grid(self, t):
        for ej in [0.25, 1.0, 2.0, 5.0]:
            for em in [0.5, 1.5, 5.0]:
                closed = lqu_closed_xstate(thermal_xstate(ej, em, t)).lqu
                rho = gibbs_state_numeric(build_hamiltonian_x(ej, ej, em), t)
                numeric = lqu_numeric(rho)
                assert abs(closed - numeric) <= 1e-9
                assert abs(numeric - lqu_bruteforce(rho, 1024)) <= 2e-6


class TestPhysicsInvariants:
    def test_local_unitary_invariance(self, rng):
        for _ in range(10):
            rho = thermal_xstate(
                rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0), rng.uniform(0.05, 1.0)
            ).to_matrix()
            u = kron(random_qubit_unitary(rng), random_qubit_unitary(rng))
            assert abs(lqu_numeric(u @ rho @ u.conj().T) - lqu_numeric(rho)) <= 1e-9

    def test_charge_and_x_frames_give_equal_lqu(self):
        for ej, em, t in [(1.0, 1.0, 0.2), (2.0, 0.5, 0.1), (0.5, 3.0, 1.0)]:
            a = lqu_numeric(gibbs_state_numeric(build_hamiltonian_tqs(ej, ej, em), t))
            b = lqu_numeric(gibbs_state_numeric(build_hamiltonian_x(ej, ej, em), t))
            assert abs(a - b) <= 1e-9

    def test_high_temperature_decay(self):
        for ej in [0.25, 1.0, 5.0]:
            for em in [0.25, 1.0, 5.0]:
                assert lqu_closed_xstate(thermal_xstate(ej, em, 1e3)).lqu <= 1e-3

    def test_scale_invariance(self):
        for s in [0.5, 2.0, 10.0]:
            a = lqu_closed_xstate(thermal_xstate(1.3, 0.8, 0.21)).lqu
            b = lqu_closed_xstate(thermal_xstate(s * 1.3, s * 0.8, s * 0.21)).lqu
            assert abs(a - b) <= 1e-10

    def test_zero_point_every_temperature(self):
        for t in [1e-4, 0.05, 1.0, 1e6]:
            assert lqu_closed_xstate(thermal_xstate(0.0, 0.0, t)).lqu <= 1e-12


class TestCrossoverTemperature:
    def test_equal_energies_cross_near_the_reported_transition(self):
        root = crossover_temperature(1.0, 1.0, 0.01, 1.0)
        assert root is not None
        assert 0.10 <= root <= 0.20
        # bisection refinement: the gap changes sign within +-1e-6
        from lqu_lab.lqu import lqu_closed_xstate as diag
        lo = diag(thermal_xstate(1.0, 1.0, root - 1e-6))
        hi = diag(thermal_xstate(1.0, 1.0, root + 1e-6))
        assert (lo.lambda1 - lo.lambda3) * (hi.lambda1 - hi.lambda3) <= 0.0

    def test_separated_eigenvalues_give_no_crossover(self):
        assert crossover_temperature(2.0, 1.0, 0.01, 1.0) is None
        assert crossover_temperature(1.0, 0.5, 0.01, 1.0) is None

    def test_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            crossover_temperature(1.0, 1.0, 0.5, 0.5)
        with pytest.raises(TemperatureOutOfRange):
            crossover_temperature(1.0, 1.0, 1e-6, 1.0)
