"""Task for computing one critical point."""
from typing import Optional
import logging

from src.hypotheses.certification import CertificationReport
from src.model.grid import build_test_function
from src.solver.descent import localized_solve
from src.solver.exploration import SOLVERS
from src.solver.results import SolveResult, flag_sign_anomaly
from src.tasks.context import RunContext
from src.utils.errors import ConfigError, SolverError

logger = logging.getLogger(__name__)


class SolveTask:
    """Solve at one lambda from the test function v(d), optionally inside the certified shell."""

    def __init__(self, context: RunContext):
        self.context = context

    def _report(self) -> Optional[CertificationReport]:
        if self.context.theorem is None:
            return None
        return self.context.certify()

    def solve(self, lam: Optional[float] = None, localized: bool = False) -> SolveResult:
        ctx = self.context
        lam = ctx.require_lambda() if lam is None else float(lam)
        report = self._report()
        if report is not None and report.interval is not None:
            lo, hi = report.interval
            if not lo < lam < hi:
                logger.warning(f"lambda={lam:g} is outside the certified interval ]{lo:.6g}, {hi:.6g}[")

        try:
            if localized:
                if report is None or report.shell is None:
                    raise ConfigError("a localized solve needs a theorem whose report carries a shell", field="theorem")
                r1, r2 = report.shell
                result = localized_solve(ctx.inst, lam, r1, r2, ctx.d, ctx.opts)
            else:
                if ctx.method not in SOLVERS:
                    raise ConfigError(f"unknown solve method {ctx.method!r}", field="method")
                result = SOLVERS[ctx.method](ctx.inst, lam, build_test_function(ctx.inst, ctx.d), ctx.opts)
        except SolverError as e:
            logger.error(f"Solve at lambda={lam:g} failed: {e}")
            raise
        return flag_sign_anomaly(result, report.expected_sign if report is not None else None)

    def execute(self, lam: Optional[float] = None, localized: bool = False) -> dict:
        logger.info("Starting solve task")
        result = self.solve(lam, localized)
        logger.info(
            f"Solved at lambda={result.lam:g}: I={result.I_value:.6g}, scaled residual={result.residual_scaled:.2e}, "
            f"sign={result.sign_class}"
        )
        return {"result": result.to_dict()}
