import logging
import math

import numpy as np
import pytest

from src.model.grid import GridFunction, build_test_function, coerce_grid
from src.model.potential import check_growth, eval_F, quad_F
from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance, validate_instance
from src.utils.errors import CertificateError, ConfigError, GridFunctionError


def _constant_nl():
    return Nonlinearity(f=lambda k, x: np.ones(np.shape(x)), F=lambda k, t: np.asarray(t, dtype=float))


class TestGridFunction:
    def test_boundary_must_vanish(self):
        with pytest.raises(GridFunctionError):
            GridFunction([0.0, 1.0, 0.5])
        with pytest.raises(GridFunctionError):
            GridFunction([1e-300, 1.0, 0.0])

    def test_from_interior_pads(self):
        u = GridFunction.from_interior([1.0, -2.0])
        assert u.T == 2
        np.testing.assert_array_equal(u.values, [0.0, 1.0, -2.0, 0.0])
        np.testing.assert_array_equal(u.interior, [1.0, -2.0])

    def test_values_are_frozen(self):
        u = GridFunction.from_interior([1.0])
        with pytest.raises(ValueError):
            u.values[1] = 3.0

    def test_coerce_grid_checks_length(self):
        with pytest.raises(GridFunctionError):
            coerce_grid(np.zeros(5), 2)
        np.testing.assert_array_equal(coerce_grid(GridFunction.zeros(2), 2), np.zeros(4))

    def test_test_function(self, linear_instance):
        v = build_test_function(linear_instance, 0.3)
        np.testing.assert_array_equal(v.values, [0.0, 0.3, 0.3, 0.0])


class TestProblemInstance:
    def test_index_ranges(self, steep_instance):
        inst = steep_instance
        assert inst.w.size == 11
        assert inst.q.size == 12 and math.isnan(inst.q[0])
        assert inst.p.size == 12
        assert inst.p[0] == 3.0 and inst.p[11] == pytest.approx(5.0)
        assert inst.w_plus == math.exp(147)
        assert inst.q_plus == 2.0 ** 11

    def test_q_zero_is_ignored_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            inst = ProblemInstance.build(2, 1.0, [5.0, 1.0, 2.0, 3.0], 2.0, _constant_nl())
        assert math.isnan(inst.q[0])
        np.testing.assert_array_equal(inst.q[1:], [1.0, 2.0, 3.0])
        assert "q(0)" in caplog.text

    def test_wrong_profile_length(self):
        with pytest.raises(ConfigError):
            ProblemInstance.build(3, [1.0, 1.0], 1.0, 2.0, _constant_nl())

    def test_valid_instances(self, linear_instance, steep_instance, arctan_instance):
        assert validate_instance(linear_instance) == []
        assert validate_instance(steep_instance) == []
        assert validate_instance(arctan_instance) == []

    def test_reports_every_violation(self):
        inst = ProblemInstance.build(3, [0.5, 1.0, 1.0, 1.0], 1.0, [2.0, 1.5, 2.0, 2.0, 2.0], _constant_nl(), lam=-1.0)
        violations = validate_instance(inst)
        assert "w(0)=0.5 < 1" in violations
        assert "p(1)=1.5 < 2" in violations
        assert any(v.startswith("lambda=") for v in violations)

    def test_short_horizon(self):
        inst = ProblemInstance.build(1, 1.0, 1.0, 2.0, _constant_nl())
        assert "T=1 < 2" in validate_instance(inst)

    def test_growth_exponent_must_stay_below_p_minus(self, arctan_instance):
        gc = GrowthCertificate.build(1.0, 3.5, arctan_instance.T)
        inst = arctan_instance.with_nonlinearity(arctan_instance.nonlinearity.with_growth(gc))
        assert any(v.startswith("alpha+=") for v in validate_instance(inst))

    def test_negative_beta_is_reported(self):
        nl = Nonlinearity.from_separable(beta=lambda k: np.where(np.asarray(k) == 2, -1.0, 1.0), g=np.sin)
        inst = ProblemInstance.build(3, 1.0, 1.0, 2.5, nl)
        assert any(v.startswith("beta(2)=") for v in validate_instance(inst))


class TestPrimitive:
    def test_closed_form_value(self, steep_instance):
        value = eval_F(steep_instance.nonlinearity, 1, 1e-5)
        expected = 5e10 * math.exp(-36) * (1e-10 / 1.1e-10)
        assert value == pytest.approx(expected, rel=1e-12)

    def test_quadrature_matches_closed_form(self, steep_instance, arctan_instance):
        nl = steep_instance.nonlinearity
        assert quad_F(nl, 1, 1e-5) == pytest.approx(eval_F(nl, 1, 1e-5), rel=1e-6)
        g_nl = arctan_instance.nonlinearity
        assert quad_F(g_nl, 3, 0.1) == pytest.approx(math.atan(40.0) / 400.0, rel=1e-8)

    def test_zero_is_exact(self, steep_instance):
        assert eval_F(steep_instance.nonlinearity, 4, 0.0) == 0.0

    def test_quadrature_fallback_without_closed_form(self):
        nl = Nonlinearity(f=lambda k, x: np.cos(x))
        assert eval_F(nl, 1, 1.0) == pytest.approx(math.sin(1.0), rel=1e-10)
        np.testing.assert_allclose(eval_F(nl, 1, np.array([0.0, 0.5])), [0.0, math.sin(0.5)], rtol=1e-10)


class TestGrowth:
    def test_steep_example_holds(self, steep_instance):
        assert check_growth(steep_instance).holds

    def test_arctan_example_holds(self, arctan_instance):
        assert check_growth(arctan_instance).holds

    def test_violation_has_witness(self, arctan_instance):
        gc = GrowthCertificate.build(1e-4, 2.0, arctan_instance.T)
        verdict = check_growth(arctan_instance, gc)
        assert verdict.status == "violated"
        k, t = verdict.witness
        F = eval_F(arctan_instance.nonlinearity, k, t)
        assert F > 1e-4 * (1 + abs(t) ** 2)

    def test_superlinear_tail_is_unverifiable(self):
        nl = Nonlinearity(
            f=lambda k, x: 1e-30 * np.sign(x) * np.abs(x) ** 2.5,
            F=lambda k, t: 1e-30 * np.abs(t) ** 3.5 / 3.5,
        )
        inst = ProblemInstance.build(2, 1.0, 1.0, 4.0, nl)
        verdict = check_growth(inst, GrowthCertificate.build(1.0, 2.0, 2))
        assert verdict.status == "unverifiable-beyond-probe-range"

    def test_alpha_at_p_minus_is_rejected(self, linear_instance):
        with pytest.raises(CertificateError):
            check_growth(linear_instance, GrowthCertificate.build(1.0, 2.0, 2))
