import json
import math

import numpy as np
import pytest

from src.hypotheses.certification import (
    CertificationReport,
    ConditionResult,
    certify,
    check_in2,
    expected_sign,
)
from src.hypotheses.constants import derived_constants, dhat
from src.hypotheses.potential_bounds import a_d, a_d_parts, max_F_on_ball, sum_F
from src.model.potential import check_growth
from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance
from src.utils.errors import (
    CertificateError,
    ConfigError,
    EmptyIntervalError,
    HypothesisFailedError,
    NotSeparableError,
)

STEEP_K = 22.0 ** (-4.0 / 5.0) * math.exp(-98.0 / 5.0)
ARCTAN_G_D = math.atan(40.0) / 400.0


class TestDerivedConstants:
    def test_steep_example(self, steep_instance):
        dc = derived_constants(steep_instance)
        assert dc.p_minus == 3.0
        assert dc.p_plus == pytest.approx(5.0)
        assert dc.A == 2048.0
        assert dc.K == pytest.approx(STEEP_K, rel=1e-12)
        assert dc.K0 == pytest.approx(22.0 ** (-2.0 / 15.0) * math.exp(-19.6), rel=1e-12)
        assert dc.C1 == pytest.approx(11 * (math.exp(147) + 2048.0), rel=1e-15)

    def test_arctan_example(self, arctan_instance):
        dc = derived_constants(arctan_instance)
        assert (dc.p_minus, dc.p_plus, dc.A) == (3.0, 14.0, 12.0)
        assert dc.K == pytest.approx(22.0 ** (-13.0 / 14.0), rel=1e-13)

    def test_dhat(self, arctan_instance):
        d = 0.1
        expected = d ** 3 / 3 + d ** 13 / 13 + sum(d ** (k + 3) / (k + 3) for k in range(1, 11))
        assert dhat(arctan_instance, d) == pytest.approx(expected, rel=1e-14)


class TestPotentialBounds:
    def test_max_on_ball_of_even_increasing_F(self, steep_instance):
        nl = steep_instance.nonlinearity
        for c in (1e-9, 1e-6, 1.0):
            assert max_F_on_ball(steep_instance, 1, c) == pytest.approx(float(nl.F(1, c)), rel=1e-12)

    def test_max_on_ball_of_bump(self):
        nl = Nonlinearity(f=lambda k, x: np.cos(x), F=lambda k, t: np.sin(t))
        inst = ProblemInstance.build(2, 1.0, 1.0, 3.0, nl)
        assert max_F_on_ball(inst, 1, 3.0) == pytest.approx(1.0, abs=1e-9)
        assert max_F_on_ball(inst, 1, 1.0) == pytest.approx(math.sin(1.0), rel=1e-12)

    def test_a_d_against_closed_form(self, steep_instance, steep_sums):
        d = 1e-5
        for c in (1e-9, 1e9):
            denominator = (c * STEEP_K) ** 5 / 5 - d ** 3 * 2048.0 / 3
            expected = (steep_sums(c) - steep_sums(d)) / denominator
            assert a_d(steep_instance, d, c) == pytest.approx(expected, rel=1e-10)

    def test_a_d_reproduces_printed_values(self, steep_instance):
        assert a_d(steep_instance, 1e-5, 1e-9) == pytest.approx(30898916.775, rel=5e-3)
        assert a_d(steep_instance, 1e-5, 1e9) == pytest.approx(0.009, rel=5e-3)

    def test_a_d_parts(self, steep_instance, steep_sums):
        parts = a_d_parts(steep_instance, 1e-5, 1e9)
        assert parts.sum_F_d == pytest.approx(steep_sums(1e-5), rel=1e-13)
        assert parts.numerator == pytest.approx(parts.sum_max_F - parts.sum_F_d)
        assert parts.value == parts.numerator / parts.denominator

    def test_sum_F(self, arctan_instance):
        assert sum_F(arctan_instance, 0.1) == pytest.approx(10 * ARCTAN_G_D, rel=1e-14)


class TestTwoRadiusCertificate:
    def test_steep_example_interval(self, steep_instance):
        report = certify(steep_instance, "T3.2", {"c1": 1e-9, "c2": 1e9, "d": 1e-5})
        assert report.certified, report.failed_conditions
        lower, upper = report.interval
        assert lower == pytest.approx(1.0 / report.quantities["a_d_c1"], rel=1e-15)
        assert upper == pytest.approx(1.0 / report.quantities["a_d_c2"], rel=1e-15)
        assert lower == pytest.approx(0.000000033, rel=0.03)
        assert upper == pytest.approx(111.0, rel=0.01)

    def test_norm_bounds_and_shell(self, steep_instance):
        report = certify(steep_instance, "T3.2", {"c1": 1e-9, "c2": 1e9, "d": 1e-5})
        lo, hi = report.norm_bounds
        assert lo == pytest.approx(0.6 ** (1.0 / 3.0) * (1e-9 * STEEP_K) ** (5.0 / 3.0), rel=1e-10)
        assert hi == pytest.approx(1e9 * 22.0 ** (-2.0 / 3.0), rel=1e-12)
        r1, r2 = report.shell
        assert r1 == pytest.approx((1e-9 * STEEP_K) ** 5 / 5, rel=1e-10)
        assert r2 == pytest.approx((1e9 * STEEP_K) ** 5 / 5, rel=1e-10)

    def test_in2_chain(self, steep_instance):
        dc = derived_constants(steep_instance)
        ok = check_in2(dc, 1e-9, 1e-5, 1e9)
        assert ok.holds
        assert ok.witness["left"] < 1e-5 < ok.witness["middle"] < ok.witness["right"]
        assert not check_in2(dc, 1e9, 1e-5, 1e9).holds

    def test_equal_radii_fail(self, steep_instance):
        report = certify(steep_instance, "T3.2", {"c1": 1e9, "c2": 1e9, "d": 1e-5})
        assert not report.certified
        assert "in2" in report.failed_conditions
        with pytest.raises(HypothesisFailedError):
            report.raise_for_failure()

    def test_no_sign_expectation_for_odd_reaction(self, steep_instance):
        assert expected_sign(steep_instance) is None


class TestSingleRadiusCertificates:
    def test_unit_weight_interval(self, arctan_instance):
        report = certify(arctan_instance, "T1.1", {"c": 17.1, "d": 0.1})
        assert report.certified, report.failed_conditions
        lower, upper = report.interval
        assert lower == pytest.approx(0.012 / (30 * ARCTAN_G_D), rel=1e-12)
        assert lower == pytest.approx(0.1035061724, rel=1e-3)
        assert upper == pytest.approx(67.87674577, rel=1e-3)
        assert report.sup_bound == 17.1
        assert report.expected_sign == "nonnegative"

    def test_unit_weight_side_condition(self, arctan_instance):
        report = certify(arctan_instance, "T1.1", {"c": 17.1, "d": 0.1})
        side = report.condition("side-explicit")
        assert side.holds
        expected = 3 * 17.1 ** 14 / (12 * 14 * 22.0 ** 13)
        assert side.witness["middle"] == pytest.approx(expected, rel=1e-10)
        assert 1e-3 < side.witness["middle"] < 3.0 / 168.0

    @pytest.mark.parametrize("theorem", ["T3.4", "T3.5"])
    def test_general_certificates_agree_on_unit_weights(self, arctan_instance, theorem):
        explicit = certify(arctan_instance, "T1.1", {"c": 17.1, "d": 0.1})
        general = certify(arctan_instance, theorem, {"c": 17.1, "d": 0.1})
        assert general.certified, general.failed_conditions
        np.testing.assert_allclose(general.interval, explicit.interval, rtol=1e-9)
        assert general.norm_bounds == explicit.norm_bounds

    def test_shape_mismatch(self, arctan_instance):
        shifted = ProblemInstance.build(
            10, 1.0, 1.0, lambda k: k + 4.0, arctan_instance.nonlinearity, lam=1.0
        )
        report = certify(shifted, "T1.1", {"c": 17.1, "d": 0.1})
        assert "shape" in report.failed_conditions
        assert not report.certified

    def test_unit_weight_needs_separable(self, steep_instance):
        with pytest.raises(NotSeparableError):
            certify(steep_instance, "T1.1", {"c": 1.0, "d": 0.1})


class TestUnboundedCertificate:
    def test_steep_example_fails_growth_side(self, steep_instance):
        report = certify(steep_instance, "T3.8", {"c3": 0.05, "d": 5e-10})
        assert "F5" in report.failed_conditions
        assert report.quantities["F5_lhs"] > report.quantities["F5_rhs"]
        assert report.quantities["F5_rhs"] == pytest.approx(1.338709020e16, rel=5e-3)
        assert report.quantities["candidate_lower"] == pytest.approx(7.469883186e-17, rel=5e-3)
        assert report.dhat == pytest.approx(dhat(steep_instance, 5e-10))
        with pytest.raises(HypothesisFailedError):
            report.raise_for_failure()

    def test_three_solution_variant_shares_conditions(self, steep_instance):
        report = certify(steep_instance, "C3.9", {"c3": 0.05, "d": 5e-10})
        assert report.theorem_id == "C3.9"
        assert "F5" in report.failed_conditions
        assert math.isfinite(report.quantities["candidate_upper"])


class TestErrors:
    def test_unknown_theorem(self, arctan_instance):
        with pytest.raises(ConfigError):
            certify(arctan_instance, "T9.9", {"c": 1.0, "d": 0.1})

    def test_missing_parameter(self, arctan_instance):
        with pytest.raises(ConfigError) as info:
            certify(arctan_instance, "T3.2", {"c1": 1.0, "d": 0.1})
        assert info.value.details["missing"] == ["c2"]

    def test_growth_certificate_required(self, linear_instance):
        with pytest.raises(CertificateError):
            certify(linear_instance, "T3.4", {"c": 1.0, "d": 0.1})

    def test_empty_interval_error(self):
        report = CertificationReport(
            theorem_id="T3.4",
            inputs={},
            conditions=[ConditionResult("nonempty-interval", False, -1.0)],
        )
        with pytest.raises(EmptyIntervalError):
            report.raise_for_failure()


def test_report_round_trip(steep_instance):
    report = certify(steep_instance, "T3.8", {"c3": 0.05, "d": 5e-10})
    data = json.loads(json.dumps(report.to_dict(), allow_nan=False))
    restored = CertificationReport.from_dict(data)
    assert restored.to_dict() == report.to_dict()
    assert restored.quantities["candidate_upper"] == math.inf


def test_cubic_reaction_breaks_quadratic_growth():
    """F = t^4/4 overtakes 1 + t^2 where t^2 = 2 + sqrt(8)."""
    nl = Nonlinearity(
        f=lambda k, x: np.asarray(x, dtype=float) ** 3,
        F=lambda k, t: np.asarray(t, dtype=float) ** 4 / 4,
        df=lambda k, x: 3 * np.asarray(x, dtype=float) ** 2,
    )
    inst = ProblemInstance.build(2, 1.0, 1.0, 3.0, nl, lam=1.0)
    verdict = check_growth(inst, GrowthCertificate.build(1.0, 2.0, 2))
    assert verdict.status == "violated"
    k, t = verdict.witness
    assert k == 1
    assert abs(t) == pytest.approx(math.sqrt(2.0 + math.sqrt(8.0)), rel=1e-6)
    assert abs(t) == pytest.approx(2.2, abs=0.01)
    assert verdict.excess > 0
