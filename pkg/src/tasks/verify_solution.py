"""Task for verifying a claimed solution against the certification report."""
from pathlib import Path
from typing import Optional, Union
import logging

from src.oracle.verification import verify_solution
from src.reporting.report_writer import read_report
from src.solver.results import SolveResult
from src.tasks.context import RunContext
from src.tasks.solve_problem import SolveTask
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


class VerificationTask:
    """Verify a stored SolveResult, or solve first and verify the fresh result."""

    def __init__(self, context: RunContext):
        self.context = context

    @staticmethod
    def load_solution(path: Union[str, Path]) -> SolveResult:
        doc = read_report(path)
        data = doc.get("result", doc)
        if "u" not in data or "lambda" not in data:
            logger.error(f"{path} does not contain a solve result")
            raise ConfigError(f"{path} is not a solve report", path=str(path))
        return SolveResult.from_dict(data)

    def execute(self, solution_path: Optional[Union[str, Path]] = None, localized: bool = False) -> dict:
        logger.info("Starting verification task")
        ctx = self.context
        if solution_path is not None:
            result = self.load_solution(solution_path)
        else:
            result = SolveTask(ctx).solve(localized=localized)
        report = ctx.certify() if ctx.theorem is not None else None
        verdict = verify_solution(ctx.inst, result.lam, result.u, report, localized=localized)
        return {
            "overall": verdict.overall,
            "lambda": result.lam,
            "verdict": verdict.to_dict(),
            "result": result.to_dict(),
        }
