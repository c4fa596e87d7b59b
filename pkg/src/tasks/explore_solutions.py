"""Tasks for lambda sweeps and multi-start searches."""
from typing import Optional, Tuple
import logging

from src.solver.exploration import multi_start, sweep_lambda
from src.tasks.context import RunContext

logger = logging.getLogger(__name__)

DEFAULT_SWEEP_POINTS = 16


class SweepTask:
    """Solve along a lambda grid: the configured one, else the certified interval."""

    def __init__(self, context: RunContext):
        self.context = context

    def _grid(self) -> Tuple[Tuple[float, float], int, bool]:
        grid = self.context.lambda_grid
        if grid is not None:
            return (grid.lo, grid.hi), grid.n, grid.log
        report = self.context.certify()
        report.raise_for_failure()
        return report.interval, DEFAULT_SWEEP_POINTS, True

    def execute(self) -> dict:
        logger.info("Starting lambda sweep task")
        ctx = self.context
        interval, n, log_spacing = self._grid()
        with ctx.executor() as pool:
            sweep = sweep_lambda(
                ctx.inst,
                interval,
                n,
                opts=ctx.opts,
                d=ctx.d,
                log_spacing=log_spacing,
                method=ctx.method,
                executor=pool,
            )
        result = sweep.to_dict()
        result["interval"] = list(interval)
        result["log_spacing"] = log_spacing
        return result


class MultiStartTask:
    """Collect distinct critical points at one lambda."""

    def __init__(self, context: RunContext):
        self.context = context

    def execute(self, lam: Optional[float] = None, method: str = "minimize") -> dict:
        logger.info("Starting multi-start task")
        ctx = self.context
        lam = ctx.require_lambda() if lam is None else float(lam)
        with ctx.executor() as pool:
            found = multi_start(
                ctx.inst,
                lam,
                ctx.n_starts,
                seed=ctx.seed,
                opts=ctx.opts,
                d=ctx.params.get("d"),
                method=method,
                executor=pool,
            )
        nontrivial = [r for r in found if r.sign_class != "zero"]
        logger.info(f"Found {len(found)} distinct critical point(s), {len(nontrivial)} nontrivial")
        return {
            "lambda": lam,
            "n_starts": ctx.n_starts,
            "distinct": len(found),
            "nontrivial": len(nontrivial),
            "results": [r.to_dict() for r in found],
        }
