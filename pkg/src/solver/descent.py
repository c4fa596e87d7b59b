"""Energy descent and the shell-localized minimization."""
from typing import Callable, Optional, Tuple
import logging
import math

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from src.functional.energy import Phi, energy_value
from src.functional.gradient import residual
from src.functional.stiffness import Condensation, condense, stiffness_metric
from src.model.grid import build_test_function, coerce_grid
from src.model.problem import ProblemInstance
from src.solver.newton import solve_newton
from src.solver.options import SolverOptions
from src.solver.results import SolveResult, make_result
from src.utils.errors import BadShellError, ConfigError, LeftShellError, NoConvergenceError

logger = logging.getLogger(__name__)

# consecutive iterations with negligible decrease before descent stops
_STALL_WINDOW = 25

# interior values -> (snapped interior values, grouping, metric on the groups)
Geometry = Callable[[np.ndarray], Tuple[np.ndarray, Condensation, np.ndarray]]


def _pad(inner: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], inner, [0.0]))


def _energy_geometry(inst: ProblemInstance, lam: float, opts: SolverOptions) -> Geometry:
    def build(inner: np.ndarray):
        u = _pad(inner)
        cond = condense(inst, u, lam, opts.rigid_link_rel)
        u = cond.snap(u)
        return u[1:-1], cond, stiffness_metric(inst, u, lam, cond)

    return build


def _metric_direction(metric: np.ndarray, G: np.ndarray) -> Optional[np.ndarray]:
    """-M^{-1} G, or None when M cannot be solved or the result is not a descent direction."""
    if not np.all(np.isfinite(metric)):
        return None
    try:
        delta = -solve_banded((1, 1), metric, G)
    except (LinAlgError, ValueError):
        return None
    if not np.all(np.isfinite(delta)) or not float(np.dot(G, delta)) < 0:
        return None
    return delta


def _descend(
    fun: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    opts: SolverOptions,
    geometry: Geometry,
) -> Tuple[np.ndarray, int, float]:
    """Armijo descent on interior values; returns (x, iterations, grad_inf).

    Directions solve the stiffness metric on the rigid groups, falling back to
    the normalized negative gradient. ``grad_inf`` is taken over the groups.
    """
    x, cond, metric = geometry(np.array(x0, dtype=float))
    fx = fun(x)
    G = cond.reduce(grad(x))
    g_inf = float(np.max(np.abs(G))) if G.size else 0.0
    stalled = 0
    it = 0
    while it < opts.descent_max_iter and g_inf > opts.tol:
        it += 1
        delta = _metric_direction(metric, G)
        if delta is None:
            delta = -G / max(1.0, g_inf)
        slope = float(np.dot(G, delta))
        direction = cond.expand(delta)
        t = 1.0
        accepted = False
        for _ in range(opts.max_backtracks):
            trial = x + t * direction
            f_trial = fun(trial)
            if math.isfinite(f_trial) and f_trial <= fx + opts.armijo_c * t * slope:
                accepted = True
                break
            t *= opts.backtrack_shrink
        if not accepted:
            logger.debug(f"Descent stopped at iteration {it}: line search found no decrease")
            break
        x, cond, metric = geometry(trial)
        previous, fx = fx, fun(x)
        G = cond.reduce(grad(x))
        g_inf = float(np.max(np.abs(G)))
        stalled = stalled + 1 if previous - fx <= 1e-14 * max(1.0, abs(fx)) else 0
        if stalled >= _STALL_WINDOW:
            logger.debug(f"Descent stalled at iteration {it} (grad_inf={g_inf:.3e})")
            break
    return x, it, g_inf


def minimize_energy(
    inst: ProblemInstance,
    lam: float,
    init,
    opts: Optional[SolverOptions] = None,
) -> SolveResult:
    """Descent on I_lambda from ``init`` in the stiffness metric, polished by Newton.

    Raises:
        NoConvergenceError: neither descent nor the Newton polish met the tolerance.
    """
    opts = opts or SolverOptions.from_settings()
    if not lam > 0:
        raise ConfigError(f"lambda must be positive, got {lam}", field="lambda")
    start = coerce_grid(init, inst.T)

    def fun(inner):
        return energy_value(inst, _pad(inner), lam)

    def grad(inner):
        return residual(inst, _pad(inner), lam)

    inner, iterations, g_inf = _descend(fun, grad, start[1:-1], opts, _energy_geometry(inst, lam, opts))
    logger.debug(f"Descent at lambda={lam:g}: {iterations} iterations, grad_inf={g_inf:.3e}")

    try:
        polished = solve_newton(inst, lam, _pad(inner), opts)
    except NoConvergenceError as e:
        fallback = make_result(
            inst, lam, _pad(inner), iterations, opts.tol, "descent", rigid_link_rel=opts.rigid_link_rel
        )
        if fallback.converged:
            return fallback
        best = e.result if e.result is not None and e.result.residual_scaled < fallback.residual_scaled else fallback
        best.method = "descent+newton"
        logger.error(
            f"Energy minimization did not converge at lambda={lam:g} (scaled residual={best.residual_scaled:.3e})"
        )
        raise NoConvergenceError(
            f"energy minimization did not reach residual {opts.tol:g} at lambda={lam:g}",
            result=best,
            iterations=iterations,
            residual_inf=best.residual_inf,
            residual_scaled=best.residual_scaled,
        ) from e
    polished.iterations += iterations
    polished.method = "descent+newton"
    return polished


def _localization(inst: ProblemInstance, u, r1: float, r2: float) -> dict:
    value = Phi(inst, u)
    return {"r1": r1, "r2": r2, "Phi": value, "inside": bool(r1 < value < r2)}


def localized_solve(
    inst: ProblemInstance,
    lam: float,
    r1: float,
    r2: float,
    d: float,
    opts: Optional[SolverOptions] = None,
) -> SolveResult:
    """Minimize I_lambda inside the shell r1 < Phi(u) < r2 starting from v(d).

    The shell is enforced by mu * (max(0, Phi - r2)^2 + max(0, r1 - Phi)^2)
    with mu growing geometrically until the unpenalized Newton polish stays
    inside. A shell with r1 <= 0 and r2 = inf reduces to ``minimize_energy``.

    Args:
        inst: Problem instance.
        lam: Positive parameter.
        r1: Lower shell radius for Phi.
        r2: Upper shell radius for Phi (may be ``inf``).
        d: Height of the starting test function v(d).
        opts: Solver options; defaults to the configured settings.

    Returns:
        A converged SolveResult whose ``localization`` records r1, r2, Phi(u) and ``inside``.

    Raises:
        NoConvergenceError: a penalty level stayed inside the shell without converging.
        BadShellError: Phi(v(d)) is not inside the shell.
        LeftShellError: no penalty level kept the converged point inside.
    """
    opts = opts or SolverOptions.from_settings()
    v = build_test_function(inst, d)
    phi_v = Phi(inst, v)
    if not r1 < phi_v < r2:
        logger.error(f"Shell ]{r1:.6g}, {r2:.6g}[ does not contain Phi(v)={phi_v:.6g}")
        raise BadShellError(
            f"Phi(v(d))={phi_v:.6g} is not inside ]{r1:.6g}, {r2:.6g}[",
            r1=r1,
            r2=r2,
            Phi=phi_v,
            d=d,
        )

    if r1 <= 0 and math.isinf(r2):
        result = minimize_energy(inst, lam, v, opts)
        result.localization = _localization(inst, result.u, r1, r2)
        return result

    def penalty_parts(inner):
        u = _pad(inner)
        value = Phi(inst, u)
        return u, value, max(0.0, value - r2), max(0.0, r1 - value)

    geometry = _energy_geometry(inst, lam, opts)
    inner = v.values[1:-1]
    total_iterations = 0
    last: Optional[SolveResult] = None
    for level in range(opts.penalty_max_levels):
        mu = opts.penalty_mu0 * opts.penalty_growth ** level

        def fun(x, mu=mu):
            u, _, above, below = penalty_parts(x)
            return energy_value(inst, u, lam) + mu * (above ** 2 + below ** 2)

        def grad(x, mu=mu):
            u, _, above, below = penalty_parts(x)
            # the gradient of Phi is the residual with lambda = 0 and no reaction
            dphi = residual(inst, u, 0.0) if (above or below) else 0.0
            return residual(inst, u, lam) + 2.0 * mu * (above - below) * dphi

        inner, iterations, _ = _descend(fun, grad, inner, opts, geometry)
        total_iterations += iterations
        try:
            candidate = solve_newton(inst, lam, _pad(inner), opts)
        except NoConvergenceError as e:
            candidate = e.result
        if candidate is None:
            continue
        candidate.localization = _localization(inst, candidate.u, r1, r2)
        candidate.iterations += total_iterations
        candidate.method = "localized"
        last = candidate
        logger.debug(
            f"Penalty level {level} (mu={mu:g}): Phi={candidate.localization['Phi']:.6g}, "
            f"scaled residual={candidate.residual_scaled:.3e}"
        )
        if candidate.converged and candidate.localization["inside"]:
            logger.info(f"Localized solve converged at lambda={lam:g} after {level + 1} penalty level(s)")
            return candidate

    if last is not None and not last.converged and last.localization["inside"]:
        raise NoConvergenceError(
            f"localized solve stayed in the shell but did not converge at lambda={lam:g}",
            result=last,
            residual_inf=last.residual_inf,
            residual_scaled=last.residual_scaled,
        )
    logger.error(f"Localized solve left the shell at lambda={lam:g}")
    raise LeftShellError(
        f"no penalty level kept the solution inside ]{r1:.6g}, {r2:.6g}[",
        result=last,
        r1=r1,
        r2=r2,
    )


