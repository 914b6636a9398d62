import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from entspec import elliptic
from entspec.errors import DomainError


def quadrature_K(k: float) -> float:
    """Independent oracle: adaptive quadrature of the defining integral,
    with x = sin(phi) removing the endpoint singularity."""
    val, err = quad(
        lambda phi: 1.0 / math.sqrt(1.0 - (k * math.sin(phi)) ** 2),
        0.0,
        math.pi / 2.0,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    assert err < 1e-12
    return val


class TestCompleteEllipticK:
    def test_k_zero_is_half_pi(self):
        assert elliptic.complete_elliptic_K(0.0) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_self_complementary_point(self):
        k = 1.0 / math.sqrt(2.0)
        data = elliptic.nome(k)
        assert data.K == pytest.approx(data.K_prime, rel=1e-14)
        assert data.tau0 == pytest.approx(1.0, rel=1e-14)
        assert data.q == pytest.approx(math.exp(-math.pi), rel=1e-13)

    def test_against_quadrature_at_0p8(self):
        assert elliptic.complete_elliptic_K(0.8) == pytest.approx(
            quadrature_K(0.8), rel=1e-12
        )

    def test_against_quadrature_random_moduli(self):
        rng = np.random.default_rng(20260810)
        for k in rng.uniform(1e-6, 1.0 - 1e-6, size=100):
            assert elliptic.complete_elliptic_K(k) == pytest.approx(
                quadrature_K(k), rel=1e-12
            )

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5, math.inf])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            elliptic.complete_elliptic_K(bad)


class TestTheta:
    def test_theta3_at_zero_nome(self):
        assert elliptic.theta(3, 0.0, 0.0) == 1.0

    @pytest.mark.parametrize("q", [0.0, 0.1, 0.5, 0.9])
    def test_theta1_odd(self, q):
        assert elliptic.theta(1, 0.0, q) == 0.0

    def test_theta2_partial_sums(self):
        # direct term-by-term summation of 2 q^{(n+1/2)^2}
        q = 0.1
        direct = 0.0
        for n in range(40):
            direct += 2.0 * q ** ((n + 0.5) ** 2)
        assert elliptic.theta(2, 0.0, q) == pytest.approx(direct, rel=1e-15)

    def test_theta1_against_sine_series(self):
        q, z = 0.3, 0.7
        direct = sum(
            2.0 * (-1) ** n * q ** ((n + 0.5) ** 2) * math.sin((2 * n + 1) * z)
            for n in range(60)
        )
        assert elliptic.theta(1, z, q) == pytest.approx(direct, rel=1e-13)

    def test_jacobi_identity_on_log_grid(self):
        for q in np.logspace(-8, math.log10(0.9), 25):
            t2 = elliptic.theta(2, 0.0, q)
            t3 = elliptic.theta(3, 0.0, q)
            t4 = elliptic.theta(4, 0.0, q)
            assert t2**4 + t4**4 == pytest.approx(t3**4, rel=1e-12)

    @given(st.floats(min_value=1e-8, max_value=0.85))
    @settings(max_examples=60, deadline=None)
    def test_jacobi_identity_property(self, q):
        t2 = elliptic.theta(2, 0.0, q)
        t3 = elliptic.theta(3, 0.0, q)
        t4 = elliptic.theta(4, 0.0, q)
        assert t2**4 + t4**4 == pytest.approx(t3**4, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            elliptic.theta(5, 0.0, 0.1)
        with pytest.raises(DomainError):
            elliptic.theta(3, 0.0, 1.0)
        with pytest.raises(DomainError):
            elliptic.theta(3, 0.0, -0.2)


class TestModularLambda:
    def test_fixed_point(self):
        # tau -> 1/tau maps lambda -> 1 - lambda; tau = 1 is the fixed point
        assert elliptic.modular_lambda(1.0) == pytest.approx(0.5, rel=1e-12)

    @pytest.mark.parametrize("tau", [0.3, 0.7, 1.0, 1.9, 4.0])
    def test_inversion_identity(self, tau):
        total = elliptic.modular_lambda(tau) + elliptic.modular_lambda(1.0 / tau)
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_value_from_modulus_two_thirds(self):
        data = elliptic.nome(2.0 / 3.0)
        assert elliptic.modular_lambda(data.tau0) == pytest.approx(4.0 / 9.0, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            elliptic.modular_lambda(0.0)
        with pytest.raises(DomainError):
            elliptic.modular_lambda(-1.0)


class TestNome:
    def test_invariants(self):
        for k in np.linspace(0.05, 0.95, 19):
            data = elliptic.nome(k)
            assert data.k**2 + data.k_prime**2 == pytest.approx(1.0, rel=1e-14)
            assert data.tau0 > 0
            assert data.q == math.exp(-math.pi * data.tau0)

    def test_round_trip_modulus(self):
        for k in np.linspace(0.05, 0.95, 19):
            data = elliptic.nome(k)
            assert elliptic.modular_lambda(data.tau0) == pytest.approx(k * k, rel=1e-10)

    @given(st.floats(min_value=0.01, max_value=0.99))
    @settings(max_examples=40, deadline=None)
    def test_round_trip_property(self, k):
        data = elliptic.nome(k)
        assert elliptic.modular_lambda(data.tau0) == pytest.approx(k * k, rel=1e-10)

    def test_monotonicity(self):
        ks = np.linspace(0.02, 0.98, 30)
        taus = [elliptic.nome(k).tau0 for k in ks]
        qs = [elliptic.nome(k).q for k in ks]
        assert all(a > b for a, b in zip(taus, taus[1:]))
        assert all(a < b for a, b in zip(qs, qs[1:]))

    def test_endpoints_rejected(self):
        with pytest.raises(DomainError):
            elliptic.nome(0.0)
        with pytest.raises(DomainError):
            elliptic.nome(1.0)
