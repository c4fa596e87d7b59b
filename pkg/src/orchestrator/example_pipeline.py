"""Orchestrator running a built-in example end to end."""
from typing import Any, Callable, Dict, List, Optional
import logging

from src.ingestion.examples import example_document
from src.oracle.verification import verify_solution
from src.reporting.discrepancy import discrepancy_section
from src.tasks.context import RunContext
from src.tasks.inspect_instance import ConstantsTask, InstanceValidationTask
from src.tasks.solve_problem import SolveTask
from src.utils.errors import DbvpError

logger = logging.getLogger(__name__)

STEPS = ("validate", "constants", "certify", "solve", "verify", "discrepancy")


class ExamplePipeline:
    """validate -> constants -> certify -> solve -> verify, then the published-value comparison.

    A failing step is recorded and later steps that depend on it are skipped;
    the pipeline itself never raises a library error.
    """

    def __init__(self, context: RunContext):
        self.context = context

    @classmethod
    def for_example(cls, example_id: str, **overrides: Any) -> "ExamplePipeline":
        return cls(RunContext.from_document(example_document(example_id), **overrides))

    def _run_step(self, results: Dict[str, Any], name: str, fn: Callable[[], Any]) -> Optional[Any]:
        index = STEPS.index(name) + 1
        logger.info(f"[STEP {index}/{len(STEPS)}] {name}")
        try:
            value = fn()
        except DbvpError as e:
            logger.error(f"Step {name} failed: {e}")
            results["steps"][name] = {"success": False, "error": e.to_dict()}
            results["errors"].append({"step": name, **e.to_dict()})
            return None
        results["steps"][name] = {"success": True, **(value if isinstance(value, dict) else {})}
        return value

    def _theorems(self) -> List[str]:
        names = [self.context.theorem] if self.context.theorem else []
        for ref in self.context.doc.reference_values:
            if ref.theorem not in names:
                names.append(ref.theorem)
        return names

    def _certify_all(self) -> dict:
        reports = {t: self.context.certify(t) for t in self._theorems()}
        return {"reports": {t: r.to_dict() for t, r in reports.items()}}

    def execute(self, localized: Optional[bool] = None) -> Dict[str, Any]:
        ctx = self.context
        results: Dict[str, Any] = {"example": ctx.doc.label, "steps": {}, "errors": [], "success": False}

        logger.info("=" * 70)
        logger.info(f"EXAMPLE PIPELINE {ctx.doc.label}")
        logger.info("=" * 70)

        validation = self._run_step(results, "validate", InstanceValidationTask(ctx).execute)
        if validation is None or not validation["valid"]:
            results["completed"] = False
            return results

        self._run_step(results, "constants", ConstantsTask(ctx).execute)
        certified = self._run_step(results, "certify", self._certify_all)

        primary = ctx.certify() if certified is not None and ctx.theorem else None
        if localized is None:
            localized = primary is not None and primary.certified and primary.shell is not None

        solved: Dict[str, Any] = {}

        def solve():
            solved["result"] = SolveTask(ctx).solve(localized=localized)
            return {"localized": localized, "result": solved["result"].to_dict()}

        if ctx.lam is not None:
            self._run_step(results, "solve", solve)
        if "result" in solved:
            result = solved["result"]
            self._run_step(
                results,
                "verify",
                lambda: verify_solution(ctx.inst, result.lam, result.u, primary, localized=localized).to_dict(),
            )

        if certified is not None and ctx.doc.reference_values:
            reports = {t: ctx.certify(t) for t in self._theorems()}
            self._run_step(
                results,
                "discrepancy",
                lambda: {"entries": [e.to_dict() for e in discrepancy_section(ctx.doc.reference_values, reports)]},
            )

        results["completed"] = True
        results["success"] = not results["errors"]
        logger.info(f"Example {ctx.doc.label} finished: {'success' if results['success'] else 'with errors'}")
        return results
