"""Resolved run parameters shared by every task."""
from concurrent.futures import Executor, ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional
import logging

from config.settings import get_settings
from src.hypotheses.certification import CertificationReport, certify
from src.ingestion.config_document import ConfigDocument, LambdaGrid
from src.ingestion.instance_builder import build_instance
from src.model.potential import GrowthVerdict, check_growth
from src.model.problem import ProblemInstance
from src.solver.options import SolverOptions
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)
settings = get_settings()

PARAM_NAMES = ("c", "c1", "c2", "c3", "d")


@dataclass
class RunContext:
    """A configuration document with command-line overrides applied."""

    doc: ConfigDocument
    inst: ProblemInstance
    theorem: Optional[str]
    params: Dict[str, Optional[float]]
    lam: Optional[float]
    lambda_grid: Optional[LambdaGrid]
    opts: SolverOptions
    method: str
    seed: int
    n_starts: int
    n_cases: int
    _growth: Optional[GrowthVerdict] = field(default=None, repr=False)
    _reports: Dict[str, CertificationReport] = field(default_factory=dict, repr=False)

    @classmethod
    def from_document(cls, doc: ConfigDocument, **overrides: Any) -> "RunContext":
        """Overrides set to None keep the document's value."""
        run = doc.run

        def pick(name, default):
            value = overrides.get(name)
            return default if value is None else value

        params = {n: pick(n, getattr(run, n)) for n in PARAM_NAMES}
        lam = pick("lam", run.lam)
        opts = SolverOptions.from_settings(
            tol=pick("tol", run.solver.tol),
            max_iter=pick("max_iter", run.solver.max_iter),
            descent_max_iter=run.solver.descent_max_iter,
        )
        return cls(
            doc=doc,
            inst=build_instance(doc, lam),
            theorem=pick("theorem", run.theorem),
            params=params,
            lam=lam,
            lambda_grid=pick("lambda_grid", run.lambda_grid),
            opts=opts,
            method=pick("method", run.solver.method),
            seed=int(pick("seed", run.seed)),
            n_starts=int(pick("n_starts", run.n_starts)),
            n_cases=int(pick("n_cases", run.n_cases)),
        )

    @property
    def d(self) -> float:
        d = self.params.get("d")
        return 0.0 if d is None else float(d)

    def require_lambda(self) -> float:
        if self.lam is None:
            logger.error("No lambda given in the config or on the command line")
            raise ConfigError("this command needs lambda (--lambda or run.lambda)", field="lambda")
        return float(self.lam)

    def growth_verdict(self) -> Optional[GrowthVerdict]:
        """Growth check of the configured certificate, computed once."""
        gc = self.inst.nonlinearity.growth
        if gc is None or not gc.alpha_plus < self.inst.p_minus:
            return None
        if self._growth is None:
            self._growth = check_growth(self.inst, gc)
        return self._growth

    def certify(self, theorem: Optional[str] = None) -> CertificationReport:
        theorem = theorem or self.theorem
        if theorem is None:
            logger.error("No theorem selected for certification")
            raise ConfigError("this command needs a theorem (--theorem or run.theorem)", field="theorem")
        if theorem not in self._reports:
            self._reports[theorem] = certify(self.inst, theorem, self.params, growth_verdict=self.growth_verdict())
        return self._reports[theorem]

    def source(self) -> Dict[str, Any]:
        """Inputs echoed into every report."""
        return {
            "label": self.doc.label,
            "T": self.inst.T,
            "theorem": self.theorem,
            "params": {k: v for k, v in self.params.items() if v is not None},
            "lambda": self.lam,
            "seed": self.seed,
            "method": self.method,
        }

    @contextmanager
    def executor(self) -> Iterator[Optional[Executor]]:
        """A thread pool when more than one worker is configured, otherwise None."""
        if settings.max_workers <= 1:
            yield None
            return
        with ThreadPoolExecutor(max_workers=settings.max_workers) as pool:
            yield pool
