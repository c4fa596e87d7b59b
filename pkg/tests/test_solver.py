import json
import math

import numpy as np
import pytest

from src.hypotheses.certification import certify
from src.model.grid import GridFunction, build_test_function
from src.solver.descent import localized_solve, minimize_energy
from src.solver.newton import solve_newton
from src.solver.options import SolverOptions
from src.solver.results import SolveResult, flag_sign_anomaly, make_result, sign_class
from src.utils.errors import BadShellError, ConfigError, NoConvergenceError

STEEP_K = 22.0 ** (-4.0 / 5.0) * math.exp(-98.0 / 5.0)


class TestNewton:
    def test_linear_problem(self, linear_instance):
        result = solve_newton(linear_instance, 1.0, GridFunction.zeros(2))
        assert result.converged
        np.testing.assert_allclose(result.u.values, [0.0, 0.5, 0.5, 0.0], atol=1e-12)
        assert result.I_value == pytest.approx(-0.5)
        assert result.sign_class == "positive"

    @pytest.mark.parametrize("lam", [0.2, 1.0, 10.0, 60.0])
    def test_arctan_example(self, arctan_instance, lam):
        result = solve_newton(arctan_instance, lam, build_test_function(arctan_instance, 0.1))
        assert result.converged
        assert result.residual_inf <= 1e-8
        assert result.sup_norm < 17.1
        assert result.sign_class in ("positive", "nonnegative")

    def test_no_convergence_keeps_last_iterate(self, arctan_instance):
        opts = SolverOptions.from_settings(tol=1e-30, max_iter=2)
        with pytest.raises(NoConvergenceError) as info:
            solve_newton(arctan_instance, 1.0, build_test_function(arctan_instance, 0.1), opts)
        assert info.value.result is not None
        assert not info.value.result.converged
        assert info.value.details["iterations"] <= 2

    def test_lambda_must_be_positive(self, linear_instance):
        with pytest.raises(ConfigError):
            solve_newton(linear_instance, 0.0, GridFunction.zeros(2))


class TestDescent:
    def test_linear_problem(self, linear_instance):
        result = minimize_energy(linear_instance, 1.0, GridFunction.from_interior([2.0, -1.0]))
        assert result.converged
        np.testing.assert_allclose(result.u.values, [0.0, 0.5, 0.5, 0.0], atol=1e-9)

    def test_localized_solve_stays_in_shell(self, arctan_instance):
        report = certify(arctan_instance, "T1.1", {"c": 17.1, "d": 0.1})
        r1, r2 = report.shell
        result = localized_solve(arctan_instance, 1.0, r1, r2, 0.1)
        assert result.converged
        assert result.localization["inside"]
        assert r1 < result.localization["Phi"] < r2
        assert result.method == "localized"

    def test_bad_shell(self, arctan_instance):
        with pytest.raises(BadShellError):
            localized_solve(arctan_instance, 1.0, 1.0, 2.0, 0.1)


class TestSteepWeights:
    """Weights from e^0 to e^147 with p between 3 and 5, started from the flat profile v(1e-5)."""

    @pytest.mark.parametrize("lam", [1.0, 1.8975e-3])
    def test_newton_leaves_the_flat_start(self, steep_instance, lam):
        start = build_test_function(steep_instance, 1e-5)
        result = solve_newton(steep_instance, lam, start)
        assert result.converged
        assert result.residual_scaled <= 1e-10
        assert result.sign_class == "positive"
        assert result.sup_norm > 5e-5
        assert result.rigid_links[:5] == [1, 2, 3, 4, 5]
        assert result.residual_history[0] > 1e-4

    def test_rigid_groups_are_flat(self, steep_instance):
        result = solve_newton(steep_instance, 1.0, build_test_function(steep_instance, 1e-5))
        u = result.u.values
        for j in result.rigid_links:
            assert u[j] == u[j + 1]

    def test_descent_reaches_the_same_point(self, steep_instance):
        start = build_test_function(steep_instance, 1e-5)
        newton = solve_newton(steep_instance, 1.0, start)
        descent = minimize_energy(steep_instance, 1.0, start)
        assert descent.converged
        assert descent.I_value == pytest.approx(newton.I_value, rel=1e-8)
        np.testing.assert_allclose(descent.u.values, newton.u.values, rtol=1e-5, atol=0.0)

    def test_localized_solve_meets_norm_bounds(self, steep_instance):
        report = certify(steep_instance, "T3.2", {"c1": 1e-9, "c2": 1e9, "d": 1e-5})
        r1, r2 = report.shell
        result = localized_solve(steep_instance, 1.0, r1, r2, 1e-5)
        assert result.converged
        assert result.localization["inside"]
        lower = (3.0 / 5.0) ** (1.0 / 3.0) * (1e-9 * STEEP_K) ** (5.0 / 3.0)
        upper = 1e9 * 22.0 ** (-2.0 / 3.0)
        assert report.norm_bounds == (pytest.approx(lower, rel=1e-10), pytest.approx(upper, rel=1e-12))
        assert lower < result.norm_minus < upper


class TestResults:
    def test_sign_classes(self):
        assert sign_class(GridFunction.zeros(3)) == "zero"
        assert sign_class(GridFunction.from_interior([1.0, 2.0, 0.5])) == "positive"
        assert sign_class(GridFunction.from_interior([1.0, 0.0, 0.5])) == "nonnegative"
        assert sign_class(GridFunction.from_interior([1.0, -0.5, 0.5])) == "sign-changing"

    def test_sign_anomaly_is_recorded(self, double_well):
        changing = make_result(double_well, 1.0, np.array([0.0, 1.0, -1.0, 0.0]), 0, 1e-10, "manual")
        assert flag_sign_anomaly(changing, "nonnegative").anomaly is not None
        touching = make_result(double_well, 1.0, np.array([0.0, 1.0, 0.0, 0.0]), 0, 1e-10, "manual")
        assert touching.sign_class == "nonnegative"
        assert flag_sign_anomaly(touching, "positive").anomaly is None

    def test_round_trip(self, linear_instance):
        result = solve_newton(linear_instance, 1.0, GridFunction.zeros(2))
        data = json.loads(json.dumps(result.to_dict(), allow_nan=False))
        restored = SolveResult.from_dict(data)
        assert restored.u == result.u
        assert restored.to_dict() == result.to_dict()
