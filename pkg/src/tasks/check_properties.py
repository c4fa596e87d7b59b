"""Task for the randomized inequality suite and the coercivity check."""
from typing import Optional
import logging

from src.oracle.properties import coercivity_probe, property_suite
from src.tasks.context import RunContext

logger = logging.getLogger(__name__)


class PropertyCheckTask:
    """Sample random instances; with a configured instance also sample coercivity."""

    def __init__(self, context: Optional[RunContext] = None, n_cases: int = 1000, seed: int = 0):
        self.context = context
        self.n_cases = context.n_cases if context is not None else n_cases
        self.seed = context.seed if context is not None else seed

    def execute(self) -> dict:
        logger.info(f"Starting property check task ({self.n_cases} cases, seed {self.seed})")
        if self.context is not None:
            with self.context.executor() as pool:
                verdict = property_suite(n_cases=self.n_cases, seed=self.seed, executor=pool)
        else:
            verdict = property_suite(n_cases=self.n_cases, seed=self.seed)
        result = {"overall": verdict.overall, "properties": verdict.to_dict()}

        ctx = self.context
        if ctx is not None and ctx.inst.nonlinearity.growth is not None:
            lam = ctx.lam if ctx.lam is not None else 1.0
            rays = coercivity_probe(ctx.inst, lam, seed=self.seed)
            result["coercivity"] = rays.to_dict()
            result["overall"] = result["overall"] and rays.overall
        return result
