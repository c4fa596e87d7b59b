"""Damped Newton iteration on the Euler-Lagrange residual."""
from typing import Optional, Tuple
import logging

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from src.functional.energy import energy_value
from src.functional.gradient import residual
from src.functional.stiffness import (
    Condensation,
    characteristic_displacement,
    condense,
    condensed_jacobian,
    scaled_residual,
)
from src.model.grid import coerce_grid
from src.model.problem import ProblemInstance
from src.solver.options import SolverOptions
from src.solver.results import SolveResult, make_result
from src.utils.errors import ConfigError, JacobianSingularError, NoConvergenceError

logger = logging.getLogger(__name__)

# (next iterate, merit ||R||^2, accepted step length)
_Step = Tuple[np.ndarray, float, float]


def _newton_direction(ab: np.ndarray, R: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(ab)):
        raise JacobianSingularError("Jacobian has non-finite entries")
    try:
        step = solve_banded((1, 1), ab, -R)
    except (LinAlgError, ValueError) as e:
        raise JacobianSingularError(f"Jacobian is singular: {e}") from e
    if not np.all(np.isfinite(step)):
        raise JacobianSingularError("Newton step is not finite")
    return step


def _residual_line_search(
    inst: ProblemInstance,
    u: np.ndarray,
    lam: float,
    cond: Condensation,
    delta: np.ndarray,
    merit: float,
    opts: SolverOptions,
) -> Optional[_Step]:
    """Backtrack along ``delta`` (one entry per group) until ||R||^2 decreases enough."""
    direction = cond.expand(delta)
    t = 1.0
    for _ in range(opts.max_backtracks):
        trial = u.copy()
        trial[1:-1] += t * direction
        R_trial = cond.reduce(residual(inst, trial, lam))
        if np.all(np.isfinite(R_trial)):
            value = float(np.dot(R_trial, R_trial))
            if value <= (1.0 - 2e-4 * t) * merit:
                return trial, value, t
        t *= opts.backtrack_shrink
    return None


def _scaled_gradient_step(
    inst: ProblemInstance,
    u: np.ndarray,
    lam: float,
    cond: Condensation,
    R: np.ndarray,
    opts: SolverOptions,
) -> Optional[np.ndarray]:
    """One Armijo step of descent on I, each group's gradient divided by its Jacobian diagonal."""
    ab = condensed_jacobian(inst, u, lam, cond, characteristic_displacement(inst, u, lam))
    diag = np.abs(ab[1])
    diag = np.where(np.isfinite(diag) & (diag > 0), diag, 1.0)
    delta = -R / diag
    slope = float(np.dot(R, delta))
    direction = cond.expand(delta)
    I0 = energy_value(inst, u, lam)
    t = 1.0
    for _ in range(opts.max_backtracks):
        trial = u.copy()
        trial[1:-1] += t * direction
        if energy_value(inst, trial, lam) <= I0 + opts.armijo_c * t * slope:
            return trial
        t *= opts.backtrack_shrink
    return None


def _newton_step(
    inst: ProblemInstance,
    u: np.ndarray,
    lam: float,
    cond: Condensation,
    R: np.ndarray,
    opts: SolverOptions,
    iteration: int,
) -> Optional[_Step]:
    """Exact Newton step; when it needs damping, also the step with regularized links, keeping the better."""
    merit = float(np.dot(R, R))
    best: Optional[_Step] = None
    for regularized in (False, True):
        floor = characteristic_displacement(inst, u, lam) if regularized else None
        try:
            delta = _newton_direction(condensed_jacobian(inst, u, lam, cond, floor), R)
        except JacobianSingularError as e:
            logger.debug(f"Newton iteration {iteration} ({'regularized' if regularized else 'exact'}): {e}")
            continue
        found = _residual_line_search(inst, u, lam, cond, delta, merit, opts)
        if found is not None and (best is None or found[1] < best[1]):
            best = found
        if best is not None and best[2] == 1.0:
            break
    return best


def solve_newton(
    inst: ProblemInstance,
    lam: float,
    init,
    opts: Optional[SolverOptions] = None,
) -> SolveResult:
    """Zero the residual by Newton steps damped on the residual norm.

    Nodes joined by rigid links are solved for as one unknown (see
    ``src.functional.stiffness``). Each iteration tries the exact Newton step;
    if it has to be damped, the step from the Jacobian with links regularized
    at their characteristic displacement is tried too and the lower residual
    wins. When neither decreases the residual, a gradient step on I scaled by
    the Jacobian diagonal is taken.

    Args:
        inst: Problem instance.
        lam: Positive parameter.
        init: Starting grid function.
        opts: Solver options; defaults to the configured settings.

    Returns:
        A converged SolveResult; ``residual_history`` holds the scaled residual per iteration.

    Raises:
        ConfigError: lam is not positive.
        NoConvergenceError: tolerance not reached; carries the final result.
    """
    opts = opts or SolverOptions.from_settings()
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}", field="lambda")
    u = np.array(coerce_grid(init, inst.T), dtype=float)
    cond = condense(inst, u, lam, opts.rigid_link_rel)
    u = cond.snap(u)
    history = [scaled_residual(inst, u, lam, cond)]
    iterations = 0

    while history[-1] > opts.tol and iterations < opts.max_iter:
        iterations += 1
        R = cond.reduce(residual(inst, u, lam))
        step = _newton_step(inst, u, lam, cond, R, opts, iterations)
        if step is None:
            nxt = _scaled_gradient_step(inst, u, lam, cond, R, opts)
            if nxt is None:
                logger.debug(f"Newton iteration {iterations}: no decrease along any direction")
                break
            u, t = nxt, 0.0
        else:
            u, _, t = step
        cond = condense(inst, u, lam, opts.rigid_link_rel)
        u = cond.snap(u)
        history.append(scaled_residual(inst, u, lam, cond))
        logger.debug(f"Newton iteration {iterations}: scaled residual={history[-1]:.3e} (step {t:g})")

    result = make_result(inst, lam, u, iterations, opts.tol, "newton", history, rigid_link_rel=opts.rigid_link_rel)
    if not result.converged:
        logger.error(
            f"Newton did not converge at lambda={lam:g} after {iterations} iterations "
            f"(scaled residual={result.residual_scaled:.3e}, residual_inf={result.residual_inf:.3e})"
        )
        raise NoConvergenceError(
            f"Newton did not reach residual {opts.tol:g} at lambda={lam:g}",
            result=result,
            iterations=iterations,
            residual_inf=result.residual_inf,
            residual_scaled=result.residual_scaled,
            history=history,
        )
    return result
