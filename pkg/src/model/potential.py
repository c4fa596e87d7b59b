"""The primitive F(k, t) of f and the sub-critical growth check."""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging
import warnings

import numpy as np
from scipy import integrate, optimize

from config.settings import get_settings
from src.model.problem import (
    GROWTH_HOLDS,
    GROWTH_UNVERIFIABLE,
    GROWTH_VIOLATED,
    GrowthCertificate,
    Nonlinearity,
    ProblemInstance,
)
from src.utils.errors import CertificateError, QuadratureError

logger = logging.getLogger(__name__)
settings = get_settings()

# Gauss-Legendre nodes for cumulative integration along a sample grid.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _quad_F(nl: Nonlinearity, k: int, t: float) -> float:
    def integrand(x):
        return float(nl.f_values(k, x))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            integrand,
            0.0,
            t,
            epsabs=settings.quad_epsabs,
            epsrel=settings.quad_epsrel,
            limit=settings.quad_limit,
            full_output=1,
        )
    # quad appends a message when it gives up
    if len(out) > 3:
        logger.error(f"Quadrature of f({k},.) on [0,{t}] failed: {out[3]}")
        raise QuadratureError(
            f"quadrature of f({k},.) over [0,{t}] did not converge",
            k=int(k),
            t=float(t),
            reason=str(out[3]),
        )
    return float(out[0])


def quad_F(nl: Nonlinearity, k: int, t: float) -> float:
    """F(k,t) by adaptive quadrature, ignoring any closed form."""
    if t == 0.0:
        return 0.0
    return _quad_F(nl, k, float(t))


def eval_F(nl: Nonlinearity, k: int, t):
    """F(k,t) = integral of f(k,.) from 0 to t.

    The closed form is used when one is registered; otherwise each value is
    computed by adaptive quadrature. F(k,0) is exactly 0 on both paths.
    Accepts a scalar or an array ``t``; returns the same shape.
    """
    t_arr = np.asarray(t, dtype=float)
    if nl.F is not None:
        values = np.array(np.broadcast_to(np.asarray(nl.F(np.full(t_arr.shape, k), t_arr), dtype=float), t_arr.shape))
        values = np.where(t_arr == 0.0, 0.0, values)
    else:
        flat = [quad_F(nl, k, float(s)) for s in t_arr.ravel()]
        values = np.array(flat, dtype=float).reshape(t_arr.shape)
    if values.ndim == 0:
        return float(values)
    return values


def primitive_values(nl: Nonlinearity, ks, xs) -> np.ndarray:
    """F(k_i, x_i) for paired index and argument arrays."""
    ks = np.asarray(ks)
    xs = np.asarray(xs, dtype=float)
    if nl.F is not None:
        values = np.array(np.broadcast_to(np.asarray(nl.F(ks, xs), dtype=float), xs.shape))
        return np.where(xs == 0.0, 0.0, values)
    flat = [quad_F(nl, int(k), float(x)) for k, x in zip(np.broadcast_to(ks, xs.shape).ravel(), xs.ravel())]
    return np.array(flat, dtype=float).reshape(xs.shape)


def primitive_on_grid(nl: Nonlinearity, k: int, magnitudes: np.ndarray, sign: float = 1.0) -> np.ndarray:
    """F(k, sign*s) for an increasing array of magnitudes s >= 0.

    Without a closed form the integral is accumulated segment by segment with
    a 16-point Gauss-Legendre rule.
    """
    mags = np.asarray(magnitudes, dtype=float)
    if nl.F is not None:
        return np.asarray(eval_F(nl, k, sign * mags), dtype=float)
    edges = np.concatenate(([0.0], mags))
    left, right = edges[:-1], edges[1:]
    mid = 0.5 * (left + right)
    half = 0.5 * (right - left)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    fvals = nl.f_values(np.full(nodes.shape, k), sign * nodes)
    segments = sign * half * (fvals @ _GL_WEIGHTS)
    return np.cumsum(segments)


@dataclass
class GrowthVerdict:
    """Outcome of probing F(k,t) <= c0 (1 + |t|^alpha(k))."""

    status: str
    witness: Optional[Tuple[int, float]] = None
    excess: Optional[float] = None
    max_excess: float = -np.inf
    tail_slopes: List[Tuple[int, float, float]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == GROWTH_HOLDS

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else {"k": self.witness[0], "t": self.witness[1]},
            "excess": self.excess,
            "max_excess": self.max_excess,
            "tail_slopes": [{"k": k, "sign": s, "slope": v} for k, s, v in self.tail_slopes],
            "notes": list(self.notes),
        }


def check_growth(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate] = None,
    n_points: Optional[int] = None,
    t_range: Optional[Tuple[float, float]] = None,
) -> GrowthVerdict:
    """Check condition (F1) on a log-spaced grid of |t| on both half-lines.

    Returns "violated" with the first witness found, "holds" when the excess
    is non-positive everywhere and F is dominated by |t|^alpha(k) at the top
    of the grid, and "unverifiable-beyond-probe-range" otherwise.
    """
    gc = gc if gc is not None else inst.nonlinearity.growth
    if gc is None:
        raise CertificateError("no growth certificate attached to the nonlinearity")
    if not gc.alpha_plus < inst.p_minus:
        raise CertificateError(
            f"alpha+={gc.alpha_plus} must be below p-={inst.p_minus}",
            alpha_plus=gc.alpha_plus,
            p_minus=inst.p_minus,
        )

    lo, hi = t_range or settings.growth_grid_range
    n = int(n_points or settings.growth_grid_points)
    mags = np.geomspace(lo, hi, n)
    top = int(np.searchsorted(mags, hi / 10.0))
    nl = inst.nonlinearity
    verdict = GrowthVerdict(status=GROWTH_HOLDS)

    logger.debug(f"Checking growth on {n} points in [{lo:g}, {hi:g}] for T={inst.T}")
    for k in range(1, inst.T + 1):
        a = float(gc.alpha[k])

        def excess_at(s: float, sign: float) -> float:
            return float(eval_F(nl, k, sign * s)) - gc.c0 * (1.0 + s ** a)

        for sign in (1.0, -1.0):
            with np.errstate(over="ignore", invalid="ignore"):
                F_vals = primitive_on_grid(nl, k, mags, sign)
                excess = F_vals - gc.c0 * (1.0 + mags ** a)

            if not np.all(np.isfinite(F_vals)):
                verdict.notes.append(f"F({k},.) not finite on part of the sample grid (sign {sign:+.0f})")
                verdict.status = GROWTH_UNVERIFIABLE
                excess = np.where(np.isfinite(excess), excess, -np.inf)

            positive = np.flatnonzero(excess > 0)
            if positive.size:
                i = int(positive[0])
                s_w = _refine_crossing(excess_at, mags, excess, i, sign)
                value = excess_at(s_w, sign)
                logger.info(f"Growth condition violated at k={k}, t={sign * s_w:.6g} (excess {value:.3g})")
                verdict.status = GROWTH_VIOLATED
                verdict.witness = (k, float(sign * s_w))
                verdict.excess = value
                verdict.max_excess = max(verdict.max_excess, value)
                return verdict

            i = int(np.argmax(excess))
            s_loc, local = _refine_max(excess_at, mags, i, sign)
            verdict.max_excess = max(verdict.max_excess, float(excess[i]), local)
            if local > 0:
                logger.info(f"Growth condition violated at k={k}, t={sign * s_loc:.6g} after refinement")
                verdict.status = GROWTH_VIOLATED
                verdict.witness = (k, float(sign * s_loc))
                verdict.excess = local
                return verdict

            slope = _tail_slope(F_vals, mags, top)
            verdict.tail_slopes.append((k, sign, slope))
            if not slope <= a + 1e-6:
                verdict.notes.append(
                    f"F({k},.) grows with log-log slope {slope:.4g} > alpha({k})={a:g} at the grid edge"
                )
                verdict.status = GROWTH_UNVERIFIABLE

    return verdict


def _refine_crossing(excess_at, mags, excess, i: int, sign: float) -> float:
    """First point past the sign change of the excess, located with brentq."""
    if i == 0 or not excess[i - 1] <= 0:
        return float(mags[i])
    a, b = float(mags[i - 1]), float(mags[i])
    try:
        root = optimize.brentq(lambda s: excess_at(s, sign), a, b, xtol=1e-14 * b, maxiter=200)
    except (ValueError, RuntimeError):
        return b
    for candidate in (root, root * (1 + 1e-12), root * (1 + 1e-9)):
        if candidate <= b and excess_at(candidate, sign) > 0:
            return float(candidate)
    return b


def _refine_max(excess_at, mags, i: int, sign: float) -> Tuple[float, float]:
    """Bounded refinement of the largest excess around grid index i."""
    a = float(mags[max(i - 1, 0)])
    b = float(mags[min(i + 1, mags.size - 1)])
    if b <= a:
        return a, excess_at(a, sign)
    res = optimize.minimize_scalar(
        lambda s: -excess_at(s, sign), bounds=(a, b), method="bounded", options={"xatol": 1e-12 * b}
    )
    return float(res.x), float(-res.fun)


def _tail_slope(F_vals: np.ndarray, mags: np.ndarray, top: int) -> float:
    """log-log slope of F over the last decade of the sample grid."""
    top = min(max(top, 0), mags.size - 2)
    f_mid, f_end = float(F_vals[top]), float(F_vals[-1])
    if f_end <= 0:
        return -np.inf
    if f_mid <= 0:
        return np.inf
    return float(np.log(f_end / f_mid) / np.log(mags[-1] / mags[top]))
