import pytest

from src.orchestrator.example_pipeline import STEPS, ExamplePipeline
from src.utils.errors import ConfigError


def test_unit_weight_example_runs_every_step():
    results = ExamplePipeline.for_example("ex3.7").execute()
    assert results["success"], results["errors"]
    assert results["completed"]
    assert set(results["steps"]) == set(STEPS)
    assert results["steps"]["solve"]["localized"] is True
    assert results["steps"]["verify"]["overall"] is True
    entries = results["steps"]["discrepancy"]["entries"]
    assert [e["agrees"] for e in entries] == [True, True]


def test_two_radius_example_runs_every_step():
    results = ExamplePipeline.for_example("ex3.3").execute()
    assert results["success"], results["errors"]
    assert set(results["steps"]) == set(STEPS)
    solve = results["steps"]["solve"]
    assert solve["localized"] is True
    assert solve["result"]["converged"] is True
    assert solve["result"]["rigid_links"]
    checks = {c["name"]: c["passed"] for c in results["steps"]["verify"]["checks"]}
    assert checks == {
        "boundary": True,
        "residual": True,
        "nontrivial": True,
        "lambda-in-interval": True,
        "norm-bounds": True,
        "shell": True,
    }


def test_unbounded_example_reports_discrepancies():
    results = ExamplePipeline.for_example("ex3.10").execute(localized=False)
    assert results["completed"]
    reports = results["steps"]["certify"]["reports"]
    assert set(reports) == {"T3.8", "C3.9"}
    assert reports["T3.8"]["certified"] is False
    assert results["steps"]["solve"]["result"]["method"] in ("descent", "descent+newton")
    assert results["steps"]["verify"]["overall"] is True
    entries = {e["quantity"]: e for e in results["steps"]["discrepancy"]["entries"]}
    assert entries["F5_lhs"]["agrees"] is False
    assert entries["F5_rhs"]["agrees"] is True


def test_overrides_reach_the_context():
    pipeline = ExamplePipeline.for_example("ex3.7", lam=2.0, d=0.05)
    assert pipeline.context.lam == 2.0
    assert pipeline.context.params["d"] == 0.05


def test_invalid_instance_stops_early():
    pipeline = ExamplePipeline.for_example("ex3.7", lam=-1.0)
    results = pipeline.execute()
    assert results["completed"] is False
    assert results["steps"]["validate"]["valid"] is False
    assert "certify" not in results["steps"]


def test_unknown_example():
    with pytest.raises(ConfigError):
        ExamplePipeline.for_example("ex0")
