import json
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from src.ingestion.examples import example_document
from src.model.grid import GridFunction
from src.solver.exploration import distinct_results, lambda_grid, multi_start, sweep_lambda
from src.solver.newton import solve_newton
from src.tasks.context import RunContext
from src.tasks.explore_solutions import MultiStartTask
from src.utils.errors import ConfigError, EmptyIntervalError

UNIT_WEIGHT_INTERVAL = (0.1035061724, 67.87674577)


class TestLambdaGrid:
    def test_points_strictly_inside(self):
        grid = lambda_grid((1.0, 100.0), 3)
        assert grid.size == 3
        assert 1.0 < grid[0] < grid[1] < grid[2] < 100.0
        assert grid[1] == pytest.approx(10.0, rel=1e-6)

    def test_linear_spacing(self):
        grid = lambda_grid((0.0, 1.0), 5, log_spacing=False)
        np.testing.assert_allclose(np.diff(grid), np.diff(grid)[0], rtol=1e-9)
        assert 0.0 < grid[0] and grid[-1] < 1.0

    def test_unbounded_interval(self):
        grid = lambda_grid((2.0, np.inf), 4)
        assert grid[-1] < 2000.0
        assert grid[-1] == pytest.approx(2000.0, rel=1e-6)

    def test_single_point(self):
        assert lambda_grid((1.0, 4.0), 1)[0] == pytest.approx(2.0)

    def test_empty_interval(self):
        with pytest.raises(EmptyIntervalError):
            lambda_grid((3.0, 3.0), 4)


class TestSweep:
    def test_sweep_converges_everywhere(self, arctan_instance):
        sweep = sweep_lambda(arctan_instance, (0.2, 60.0), 4, d=0.1)
        assert len(sweep) == 4
        assert sweep.success_fraction == 1.0
        lambdas = [lam for lam, _ in sweep]
        assert lambdas == sorted(lambdas)

    def test_certified_interval_stays_below_sup_bound(self, arctan_instance):
        sweep = sweep_lambda(arctan_instance, UNIT_WEIGHT_INTERVAL, 16, d=0.1)
        assert len(sweep) == 16
        assert sweep.success_fraction == 1.0
        for lam, result in sweep:
            assert UNIT_WEIGHT_INTERVAL[0] < lam < UNIT_WEIGHT_INTERVAL[1]
            assert result.sup_norm < 17.1
            assert result.sign_class in ("positive", "nonnegative")

    def test_sweep_is_independent_of_executor(self, arctan_instance):
        serial = sweep_lambda(arctan_instance, (0.2, 60.0), 3, d=0.1)
        with ThreadPoolExecutor(max_workers=3) as pool:
            threaded = sweep_lambda(arctan_instance, (0.2, 60.0), 3, d=0.1, executor=pool)
        assert json.dumps(serial.to_dict()) == json.dumps(threaded.to_dict())

    def test_unknown_method(self, arctan_instance):
        with pytest.raises(ConfigError):
            sweep_lambda(arctan_instance, (0.2, 60.0), 2, method="bisection")


class TestMultiStart:
    def test_finds_symmetric_pairs(self, double_well):
        found = multi_start(double_well, 1.0, 9, seed=1)
        assert len(found) >= 3
        assert any(r.sign_class == "zero" for r in found)
        energies = [r.I_value for r in found]
        assert energies == sorted(energies)
        for r in found:
            if r.sign_class == "zero":
                continue
            mirrored = [np.max(np.abs(r.u.values + other.u.values)) for other in found]
            assert min(mirrored) <= 1e-5 * max(1.0, r.sup_norm)

    def test_convex_problem_has_one_solution(self, linear_instance):
        found = multi_start(linear_instance, 1.0, 6, seed=0)
        assert len(found) == 1
        np.testing.assert_allclose(found[0].u.values, [0.0, 0.5, 0.5, 0.0], atol=1e-9)

    def test_unbounded_example_report(self):
        ctx = RunContext.from_document(example_document("ex3.10"), n_starts=2)
        report = MultiStartTask(ctx).execute()
        assert report["lambda"] == 1.0
        assert report["n_starts"] == 2
        assert report["distinct"] == 2
        assert report["nontrivial"] == 1
        results = report["results"]
        assert all(r["converged"] for r in results)
        assert [r["I"] for r in results] == sorted(r["I"] for r in results)
        assert results[0]["I"] < 0.0
        assert results[0]["sign_class"] in ("positive", "nonnegative")
        assert results[-1]["sign_class"] == "zero"

    def test_no_starts(self, linear_instance):
        assert multi_start(linear_instance, 1.0, 0) == []


def test_distinct_results_drops_duplicates(linear_instance):
    a = solve_newton(linear_instance, 1.0, GridFunction.zeros(2))
    b = solve_newton(linear_instance, 1.0, GridFunction.from_interior([1.0, 1.0]))
    assert len(distinct_results([a, b])) == 1
