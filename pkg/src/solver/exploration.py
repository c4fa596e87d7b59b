"""Lambda sweeps and multi-start searches for several critical points."""
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from config.settings import get_settings
from src.model.grid import GridFunction, build_test_function
from src.model.problem import ProblemInstance
from src.solver.descent import minimize_energy
from src.solver.newton import solve_newton
from src.solver.options import SolverOptions
from src.solver.results import SolveResult
from src.utils.errors import ConfigError, DbvpError, EmptyIntervalError
from src.utils.serialization import encode

logger = logging.getLogger(__name__)
settings = get_settings()

SOLVERS: Dict[str, Callable] = {
    "newton": solve_newton,
    "minimize": minimize_energy,
}

# an unbounded interval is swept up to this multiple of its lower end
UNBOUNDED_SPAN = 1e3


def _solver(method: str) -> Callable:
    try:
        return SOLVERS[method]
    except KeyError:
        raise ConfigError(f"unknown solve method {method!r}; expected one of {', '.join(SOLVERS)}")


def lambda_grid(interval: Tuple[float, float], n: int, log_spacing: bool = True) -> np.ndarray:
    """n values strictly inside the open interval (relative endpoint offset from settings)."""
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise EmptyIntervalError(f"interval ]{lo:g}, {hi:g}[ is empty", lower=lo, upper=hi)
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}", field="n")
    if math.isinf(hi):
        hi = lo * UNBOUNDED_SPAN if lo > 0 else UNBOUNDED_SPAN
    log_spacing = log_spacing and lo > 0
    off = settings.sweep_endpoint_offset
    if log_spacing:
        a, b = lo * (1.0 + off), hi * (1.0 - off)
        if n == 1:
            return np.array([math.sqrt(lo * hi)])
        return np.geomspace(a, b, n)
    span = hi - lo
    a, b = lo + off * span, hi - off * span
    if n == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(a, b, n)


@dataclass
class SweepEntry:
    lam: float
    result: Optional[SolveResult] = None
    error: Optional[dict] = None
    warm_started: bool = False

    @property
    def converged(self) -> bool:
        return self.result is not None and self.result.converged

    def to_dict(self) -> dict:
        return encode(
            {
                "lambda": self.lam,
                "converged": self.converged,
                "warm_started": self.warm_started,
                "result": self.result.to_dict() if self.result is not None else None,
                "error": self.error,
            }
        )


@dataclass
class SweepReport:
    """Per-lambda outcomes in input order; iterating yields (lambda, result) pairs."""

    entries: List[SweepEntry] = field(default_factory=list)

    def __iter__(self) -> Iterator[Tuple[float, Optional[SolveResult]]]:
        return iter((e.lam, e.result) for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def success_fraction(self) -> float:
        if not self.entries:
            return 0.0
        return sum(e.converged for e in self.entries) / len(self.entries)

    def to_dict(self) -> dict:
        return {
            "n": len(self.entries),
            "success_fraction": self.success_fraction,
            "entries": [e.to_dict() for e in self.entries],
        }


def _attempt(inst: ProblemInstance, lam: float, init, opts: SolverOptions, solve: Callable) -> SweepEntry:
    try:
        return SweepEntry(lam=float(lam), result=solve(inst, float(lam), init, opts))
    except DbvpError as e:
        logger.debug(f"Solve at lambda={lam:g} failed: {e.code}")
        entry = SweepEntry(lam=float(lam), error=e.to_dict())
        entry.result = getattr(e, "result", None)
        return entry


def _map(executor: Optional[Executor], fn: Callable, items: Sequence) -> List:
    if executor is None:
        return [fn(item) for item in items]
    return list(executor.map(fn, items))


def sweep_lambda(
    inst: ProblemInstance,
    interval: Tuple[float, float],
    n: int,
    opts: Optional[SolverOptions] = None,
    d: float = 0.0,
    log_spacing: bool = True,
    method: str = "newton",
    executor: Optional[Executor] = None,
) -> SweepReport:
    """Solve at n lambdas inside the interval, each from v(d).

    Failed points get a second attempt warm-started from the closest
    preceding converged solution; errors are collected, never raised.

    Args:
        inst: Problem instance.
        interval: Open lambda interval; an infinite upper end is cut at ``UNBOUNDED_SPAN`` times the lower.
        n: Number of lambda values.
        opts: Solver options; defaults to the configured settings.
        d: Height of the starting test function v(d).
        log_spacing: Geometric spacing when the interval is positive.
        method: Key of ``SOLVERS``.
        executor: Optional executor the first pass is mapped over.

    Returns:
        SweepReport with one entry per lambda, in increasing order.
    """
    opts = opts or SolverOptions.from_settings()
    solve = _solver(method)
    lambdas = lambda_grid(interval, n, log_spacing)
    init = build_test_function(inst, d)

    logger.info(f"Sweeping {len(lambdas)} lambda values in ]{interval[0]:.6g}, {interval[1]:.6g}[")
    entries = _map(executor, lambda lam: _attempt(inst, lam, init, opts, solve), list(lambdas))

    for i, entry in enumerate(entries):
        if entry.converged:
            continue
        previous = next((entries[j] for j in range(i - 1, -1, -1) if entries[j].converged), None)
        if previous is None:
            continue
        retry = _attempt(inst, entry.lam, previous.result.u, opts, solve)
        retry.warm_started = True
        if retry.converged:
            entries[i] = retry
        else:
            entry.warm_started = True

    report = SweepReport(entries=entries)
    logger.info(f"Sweep finished: {report.success_fraction:.0%} converged")
    return report


def _start_points(inst: ProblemInstance, n_starts: int, seed: int, d: Optional[float]) -> List[GridFunction]:
    starts = [GridFunction.zeros(inst.T)]
    if d is not None and d > 0:
        starts.append(build_test_function(inst, d))
    remaining = n_starts - len(starts)
    if remaining > 0:
        rng = np.random.default_rng(seed)
        scales = np.geomspace(1e-6, 10.0, (remaining + 1) // 2)
        for scale in scales:
            direction = rng.standard_normal(inst.T)
            direction = direction / np.max(np.abs(direction)) * scale
            starts.append(GridFunction.from_interior(direction))
            starts.append(GridFunction.from_interior(-direction))
    return starts[:n_starts]


def distinct_results(results: List[SolveResult]) -> List[SolveResult]:
    """Drop results within max(1e-6, 1e-6 |u|) sup-distance of an earlier one."""
    tol = settings.dedup_tol
    kept: List[SolveResult] = []
    for res in results:
        threshold = max(tol, tol * res.sup_norm)
        if all(np.max(np.abs(res.u.values - other.u.values)) > threshold for other in kept):
            kept.append(res)
    return kept


def multi_start(
    inst: ProblemInstance,
    lam: float,
    n_starts: int,
    seed: int = 0,
    opts: Optional[SolverOptions] = None,
    d: Optional[float] = None,
    method: str = "minimize",
    executor: Optional[Executor] = None,
) -> List[SolveResult]:
    """Distinct converged critical points from several starts, sorted by energy.

    Starts are the zero function, v(d) when d > 0, then random directions
    at geometrically growing scales together with their negatives.

    Args:
        inst: Problem instance.
        lam: Positive parameter.
        n_starts: Number of starting points; fewer than one gives an empty list.
        seed: Seed for the random directions.
        opts: Solver options; defaults to the configured settings.
        d: Height of the v(d) start, or None to skip it.
        method: Key of ``SOLVERS``.
        executor: Optional executor the starts are mapped over.

    Returns:
        Converged results with duplicates removed (see ``distinct_results``), lowest I first.
    """
    opts = opts or SolverOptions.from_settings()
    solve = _solver(method)
    if n_starts < 1:
        return []
    starts = _start_points(inst, n_starts, seed, d)
    entries = _map(executor, lambda u0: _attempt(inst, lam, u0, opts, solve), starts)

    converged = [(i, e.result) for i, e in enumerate(entries) if e.converged]
    converged.sort(key=lambda pair: (pair[1].I_value, pair[0]))
    found = distinct_results([res for _, res in converged])
    logger.info(f"Multi-start at lambda={lam:g}: {len(converged)}/{len(starts)} converged, {len(found)} distinct")
    return found
