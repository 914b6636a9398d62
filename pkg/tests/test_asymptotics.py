import cmath
import math

import pytest

from entspec import asymptotics, model, spectrum
from entspec.model import Regime

HIGH = model.classify(1.0, 3.0)
LOW = model.classify(0.5, 1.0)


def direct_log_f(point, z) -> complex:
    """Independent oracle for log f(z): the raw degeneracy generating
    function, summed as a product series without going through the
    entropy representation."""
    if point.regime is Regime.HIGH_FIELD:
        exponents = range(1, 4000, 2)
        offset = 0.0
    else:
        exponents = range(1, 4000)
        offset = math.log(2.0)
    total = offset
    for m in exponents:
        w = z**m
        total += 2.0 * cmath.log(1.0 + w)
        if abs(w) < 1e-18:
            break
    return total


class TestAsymptoticDegeneracy:
    def test_n_one_is_finite(self):
        for regime in Regime:
            res = asymptotics.asymptotic_degeneracy(1, regime)
            assert math.isfinite(res.log_value)
            assert res.value is not None and res.value > 0

    def test_value_none_when_unrepresentable(self):
        res = asymptotics.asymptotic_degeneracy(10**6, Regime.HIGH_FIELD)
        assert res.value is None
        assert res.log_value > 700

    def test_leading_order_at_2000(self):
        table = spectrum.shared_partition_table(2000)
        log_a = math.log(table.a[2000])
        log_b2 = math.log(2 * table.b[2000])
        res_h = asymptotics.asymptotic_degeneracy(2000, Regime.HIGH_FIELD)
        res_l = asymptotics.asymptotic_degeneracy(2000, Regime.LOW_FIELD)
        assert abs(log_a - res_h.log_value) / log_a < 0.01
        assert abs(log_b2 - res_l.log_value) / log_b2 < 0.01

    def test_relative_log_error_shrinks(self):
        table = spectrum.shared_partition_table(400)
        for regime, exact in (
            (Regime.HIGH_FIELD, lambda n: table.a[n]),
            (Regime.LOW_FIELD, lambda n: 2 * table.b[n]),
        ):
            errs = []
            for n in (100, 400):
                log_exact = math.log(exact(n))
                errs.append(
                    abs(log_exact - asymptotics.asymptotic_degeneracy(n, regime).log_value)
                    / log_exact
                )
            assert errs[1] < errs[0]

    def test_validation(self):
        with pytest.raises(ValueError):
            asymptotics.asymptotic_degeneracy(0, Regime.HIGH_FIELD)


class TestSaddleRadius:
    def test_high_field_forty(self):
        data = asymptotics.saddle_radius(40, Regime.HIGH_FIELD)
        assert data.epsilon_n == pytest.approx(math.pi / math.sqrt(479.0), rel=1e-14)
        assert data.rho_n == pytest.approx(math.exp(-data.epsilon_n), rel=1e-15)

    def test_low_field_forty(self):
        data = asymptotics.saddle_radius(40, Regime.LOW_FIELD)
        assert data.epsilon_n == pytest.approx(
            math.pi * math.sqrt(2.0) / math.sqrt(481.0), rel=1e-14
        )

    @pytest.mark.parametrize("n", [10, 100, 1000])
    @pytest.mark.parametrize("regime", list(Regime))
    def test_stationarity_check_passes(self, n, regime):
        # saddle_radius internally verifies dG/dz = 0 by finite differences
        data = asymptotics.saddle_radius(n, regime)
        assert 0.0 < data.rho_n < 1.0


class TestCauchyDegeneracy:
    def test_high_field_integers(self):
        table = spectrum.shared_partition_table(20)
        for n in range(21):
            val = asymptotics.cauchy_degeneracy(HIGH, n)
            assert abs(val - table.a[n]) < 1e-6
            assert round(val) == table.a[n]

    def test_low_field_integers(self):
        table = spectrum.shared_partition_table(20)
        for n in range(21):
            val = asymptotics.cauchy_degeneracy(LOW, n)
            assert abs(val - 2 * table.b[n]) < 1e-6
            assert round(val) == 2 * table.b[n]

    def test_radius_independence(self):
        table = spectrum.shared_partition_table(12)
        for n in (3, 12):
            at_saddle = asymptotics.cauchy_degeneracy(HIGH, n)
            at_half = asymptotics.cauchy_degeneracy(HIGH, n, radius=0.5)
            assert round(at_saddle) == round(at_half) == table.a[n]

    def test_node_count_precondition(self):
        with pytest.raises(ValueError):
            asymptotics.cauchy_degeneracy(HIGH, 10, quadrature_points=80)

    def test_radius_validation(self):
        with pytest.raises(ValueError):
            asymptotics.cauchy_degeneracy(HIGH, 2, radius=1.0)


class TestGeneratingFunction:
    @pytest.mark.parametrize("point", [HIGH, LOW])
    @pytest.mark.parametrize("z", [0.2, 0.5, 0.8])
    def test_entropy_route_equals_direct_series(self, point, z):
        via_entropy = asymptotics.log_generating_function(point, z)
        direct = direct_log_f(point, z)
        assert via_entropy.real == pytest.approx(direct.real, rel=1e-12)
        assert abs(via_entropy.imag) < 1e-12

    def test_model_independence_within_regime(self):
        other_high = model.classify(0.4, 2.6)
        z = 0.6
        a = asymptotics.log_generating_function(HIGH, z)
        b = asymptotics.log_generating_function(other_high, z)
        assert a.real == pytest.approx(b.real, rel=1e-12)


class TestSingularityCheck:
    @pytest.mark.parametrize(
        "point,zs",
        [
            (HIGH, [0.5, 0.7, 0.9]),
            # the low-field residual decays twice as fast, so the window
            # where it is still above float noise sits at smaller z
            (LOW, [0.3, 0.35, 0.45]),
        ],
    )
    def test_residual_decays_towards_one(self, point, zs):
        report = asymptotics.generating_function_singularity_check(point, zs)
        residuals = [r.residual for r in report.rows]
        assert residuals[0] > residuals[1] > residuals[2]
        # smallest z is outside the asymptotic regime: visible residual
        assert residuals[0] > 1e-8

    @pytest.mark.parametrize("point", [HIGH, LOW])
    def test_residual_bounded_by_predicted_decay(self, point):
        # decay exp(s pi^2 / log z) holds until the rounding floor of the
        # two O(|log f|) values being subtracted takes over
        scale = 1.0 if point.regime is Regime.HIGH_FIELD else 2.0
        report = asymptotics.generating_function_singularity_check(
            point, [0.9, 0.99, 0.999]
        )
        for row in report.rows:
            predicted = math.exp(scale * math.pi**2 / math.log(row.x))
            floor = 1e-13 * (1.0 + abs(row.ln_f_exact))
            assert row.residual <= max(10.0 * predicted, floor)

    def test_angular_scan_peaks_at_zero_angle(self):
        report = asymptotics.generating_function_singularity_check(
            HIGH, [0.5], angular_n=40, angular_points=81
        )
        angular = [r for r in report.rows if r.kind == "angular"]
        assert len(angular) == 81
        peak = max(angular, key=lambda r: r.ln_f_exact)
        assert abs(peak.x) < 1e-12

    def test_csv_rows(self):
        report = asymptotics.generating_function_singularity_check(HIGH, [0.5, 0.9])
        lines = report.to_csv_rows()
        assert lines[0] == "kind,x,ln_f_exact,ln_f_asymptotic,residual"
        assert len(lines) == 3
        assert all(len(line.split(",")) == 5 for line in lines[1:])

    def test_z_validation(self):
        with pytest.raises(ValueError):
            asymptotics.generating_function_singularity_check(HIGH, [1.5])
