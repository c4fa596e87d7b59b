"""Maxima of F over sup-norm balls and the quotient a_d(c)."""
from dataclasses import dataclass
import logging

import numpy as np
from scipy import optimize

from config.settings import get_settings
from src.hypotheses.constants import DerivedConstants, derived_constants
from src.model.potential import eval_F
from src.model.problem import ProblemInstance
from src.utils.errors import DegenerateDenominatorError
from src.utils.numerics import abs_power

logger = logging.getLogger(__name__)
settings = get_settings()

DEGENERATE_DENOMINATOR = 1e-300


def _ball_grid(c: float, n: int) -> np.ndarray:
    """Linear grid on [-c, c] merged with log-spaced magnitudes near 0."""
    linear = np.linspace(-c, c, n)
    mags = np.geomspace(c * 1e-15, c, n // 2)
    return np.unique(np.concatenate((linear, mags, -mags, [0.0])))


def _nonnegative_separable(inst: ProblemInstance, k: int, c: float) -> bool:
    form = inst.nonlinearity.separable
    if form is None:
        return False
    if float(form.beta_values(k)) < 0:
        return False
    samples = _ball_grid(c, 1024)
    return bool(np.all(form.g_values(samples) >= 0))


def _grid_max(inst: ProblemInstance, k: int, c: float, n: int) -> float:
    nl = inst.nonlinearity
    ts = _ball_grid(c, n)
    values = np.asarray(eval_F(nl, k, ts), dtype=float)
    best = float(np.max(values))

    order = np.argsort(values)[::-1][: settings.ball_refine_candidates]
    for i in order:
        a = float(ts[max(i - 1, 0)])
        b = float(ts[min(i + 1, ts.size - 1)])
        if b <= a:
            continue

        def neg(t):
            return -float(eval_F(nl, k, t))

        mid = float(ts[i])
        try:
            if a < mid < b and neg(mid) <= min(neg(a), neg(b)):
                res = optimize.minimize_scalar(neg, bracket=(a, mid, b), method="golden")
                if not a <= res.x <= b:
                    raise ValueError("golden search left the bracket")
            else:
                res = optimize.minimize_scalar(neg, bounds=(a, b), method="bounded")
        except ValueError:
            res = optimize.minimize_scalar(neg, bounds=(a, b), method="bounded")
        best = max(best, -float(res.fun))
    return best


def max_F_on_ball(inst: ProblemInstance, k: int, c: float) -> float:
    """max of F(k, xi) over |xi| <= c.

    For a separable f with beta(k) >= 0 and g >= 0 the primitive is
    nondecreasing and the maximum is F(k, c); the grid search then only
    cross-checks it.
    """
    if c < 0:
        raise ValueError(f"ball radius must be non-negative, got {c}")
    if c == 0:
        return 0.0
    nl = inst.nonlinearity
    ends = max(float(eval_F(nl, k, -c)), 0.0, float(eval_F(nl, k, c)))

    if _nonnegative_separable(inst, k, c):
        shortcut = float(eval_F(nl, k, c))
        grid = _grid_max(inst, k, c, max(settings.ball_grid_points // 4, 64))
        if grid > shortcut + 1e-9 * max(1.0, abs(shortcut)):
            logger.warning(f"max F({k},.) on |xi|<={c:g}: grid {grid:.12g} exceeds monotone value {shortcut:.12g}")
            return max(grid, ends)
        return max(shortcut, ends)

    return max(_grid_max(inst, k, c, settings.ball_grid_points), ends)


def sum_F(inst: ProblemInstance, d: float) -> float:
    """Sum over k=1..T of F(k, d)."""
    return float(sum(eval_F(inst.nonlinearity, k, d) for k in range(1, inst.T + 1)))


def sum_max_F(inst: ProblemInstance, c: float) -> float:
    return float(sum(max_F_on_ball(inst, k, c) for k in range(1, inst.T + 1)))


@dataclass(frozen=True)
class ADQuotient:
    """Numerator, denominator and value of a_d(c)."""

    c: float
    d: float
    sum_max_F: float
    sum_F_d: float
    numerator: float
    denominator: float
    value: float

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "d": self.d,
            "sum_max_F": self.sum_max_F,
            "sum_F_d": self.sum_F_d,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "value": self.value,
        }


def a_d_parts(inst: ProblemInstance, d: float, c: float, dc: DerivedConstants = None) -> ADQuotient:
    dc = dc or derived_constants(inst)
    s_max = sum_max_F(inst, c)
    s_d = sum_F(inst, d)
    with np.errstate(over="ignore"):
        r_c = float(abs_power(c * dc.K, dc.p_plus)) / dc.p_plus
    denominator = r_c - float(abs_power(d, dc.p_minus)) * dc.A / dc.p_minus
    numerator = s_max - s_d
    if not abs(denominator) >= DEGENERATE_DENOMINATOR:
        logger.error(f"a_d({c:g}) has a degenerate denominator {denominator!r} at d={d:g}")
        raise DegenerateDenominatorError(
            f"a_d(c) denominator vanishes for c={c}, d={d}",
            c=float(c),
            d=float(d),
            denominator=float(denominator),
        )
    return ADQuotient(
        c=float(c),
        d=float(d),
        sum_max_F=s_max,
        sum_F_d=s_d,
        numerator=numerator,
        denominator=denominator,
        value=numerator / denominator,
    )


def a_d(inst: ProblemInstance, d: float, c: float, dc: DerivedConstants = None) -> float:
    """(sum max_{|xi|<=c} F - sum F(k,d)) / ((cK)^p+/p+ - d^p- A/p-)."""
    return a_d_parts(inst, d, c, dc).value
