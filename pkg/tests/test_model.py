import math

import pytest
from hypothesis import given, settings, strategies as st

from entspec import model
from entspec.errors import CriticalInputError
from entspec.model import Region


class TestClassify:
    @pytest.mark.parametrize(
        "gamma,h,region",
        [
            (1.0, 3.0, Region.CASE_2),
            (0.5, 0.0, Region.CASE_1B),
            (0.6, 1.7, Region.CASE_1A),
            (0.6, 1.6, Region.FACTORIZING_LINE),  # h^2 = 4(1-gamma^2) exactly
            (1.0, 2.0, Region.CRITICAL_ISING),
            (0.0, 1.0, Region.CRITICAL_XX),
            (1.3, 1.0, Region.CASE_1A),  # gamma > 1: circle is empty
        ],
    )
    def test_regions(self, gamma, h, region):
        assert model.classify(gamma, h).region is region

    def test_symmetry(self):
        for gamma, h in [(0.7, 1.2), (1.0, 3.0), (0.2, 0.4)]:
            a = model.classify(gamma, h)
            b = model.classify(-gamma, -h)
            assert a == b

    def test_idempotent(self):
        p = model.classify(-0.7, 2.6)
        assert model.classify(p.gamma, p.h) == p

    @given(
        st.floats(min_value=-2.5, max_value=2.5),
        st.floats(min_value=-4.0, max_value=4.0),
    )
    @settings(max_examples=100, deadline=None)
    def test_quadrant_mapping(self, gamma, h):
        p = model.classify(gamma, h)
        assert p.gamma >= 0 and p.h >= 0
        assert model.classify(gamma, h) == model.classify(-gamma, -h)

    def test_eps_crit_validation(self):
        with pytest.raises(ValueError):
            model.classify(1.0, 1.0, eps_crit=0.0)


class TestEllipticParameter:
    def test_case2_value(self):
        p = model.classify(1.0, 3.0)
        assert model.elliptic_parameter(p) == pytest.approx(2.0 / 3.0, rel=1e-15)

    def test_case1a_value(self):
        p = model.classify(1.0, 1.0)
        assert model.elliptic_parameter(p) == pytest.approx(0.5, rel=1e-15)

    def test_branch_continuity_across_factorizing_line(self):
        # straddle h^2 = 4(1 - gamma^2) with gap 1e-6 at 20 gammas
        gap = 1e-6
        for i in range(20):
            gamma = 0.1 + 0.04 * i
            h_star = 2.0 * math.sqrt(1.0 - gamma * gamma)
            hi = model.classify(gamma, h_star + gap)
            lo = model.classify(gamma, h_star - gap)
            assert hi.region is Region.CASE_1A
            assert lo.region is Region.CASE_1B
            assert abs(model.elliptic_parameter(hi) - model.elliptic_parameter(lo)) < 1e-5

    def test_k_to_one_near_critical_lines(self):
        assert model.elliptic_parameter(model.classify(1.0, 2.0 + 1e-7)) > 0.999
        assert model.elliptic_parameter(model.classify(1.0, 2.0 - 1e-7)) > 0.999
        assert model.elliptic_parameter(model.classify(1e-7, 1.0)) > 0.999

    def test_moduli_pythagorean(self):
        for gamma, h in [(1.0, 3.0), (0.7, 1.9), (0.3, 0.5), (1e-5, 1.0)]:
            k, kp = model.elliptic_moduli(model.classify(gamma, h))
            assert k * k + kp * kp == pytest.approx(1.0, rel=1e-14)

    def test_stable_complement_at_tiny_gamma(self):
        # naive sqrt(1 - k^2) would return garbage here
        k, kp = model.elliptic_moduli(model.classify(1e-8, 1.0))
        assert kp == pytest.approx(2e-8 / math.sqrt(3.0), rel=1e-12)

    @pytest.mark.parametrize("gamma,h", [(1.0, 2.0), (0.0, 1.0), (0.6, 1.6)])
    def test_critical_inputs_rejected(self, gamma, h):
        with pytest.raises(CriticalInputError):
            model.elliptic_parameter(model.classify(gamma, h))


class TestGapInfo:
    def test_near_ising(self):
        info = model.gap_info(model.classify(1.0, 2.1))
        assert info.delta == pytest.approx(0.1, rel=1e-12)
        assert info.central_charge == 0.5

    def test_near_xx(self):
        info = model.gap_info(model.classify(0.05, 1.0))
        assert info.delta == pytest.approx(0.05, rel=1e-12)
        assert info.central_charge == 1.0
        assert info.xi == pytest.approx(20.0, rel=1e-12)

    def test_deep_gapped(self):
        # both lines in reach; the closer one (XX at distance 1) wins
        info = model.gap_info(model.classify(1.0, 0.0))
        assert info.delta == pytest.approx(1.0)

    def test_total_on_special_regions(self):
        info = model.gap_info(model.classify(1.0, 2.0))
        assert info.delta == 0.0
        assert info.xi == math.inf
