"""Constants derived from an instance (A, K, K0, C1 and the extrema)."""
from dataclasses import asdict, dataclass
import logging
import math

import numpy as np

from src.model.problem import ProblemInstance
from src.utils.numerics import abs_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DerivedConstants:
    """Extrema of p, w, q and the constants built from them.

    K and K0 are evaluated through logarithms since max{w+, q+} may be huge.
    """

    T: int
    p_minus: float
    p_plus: float
    w_minus: float
    w_plus: float
    q_minus: float
    q_plus: float
    A: float
    K: float
    K0: float
    C1: float
    log_K: float

    def to_dict(self) -> dict:
        return asdict(self)


def derived_constants(inst: ProblemInstance) -> DerivedConstants:
    T = inst.T
    pm, pp = inst.p_minus, inst.p_plus
    w_plus, q_plus = inst.w_plus, inst.q_plus
    log_m = math.log(max(w_plus, q_plus))
    log_n = math.log(2 * T + 2)

    log_K = (1.0 - pp) / pp * log_n + (pm - pp) / (pp * pm) * log_m
    log_K0 = (pm - pp) / (pp * pm) * (log_n + log_m)

    A = float(inst.w[0] + inst.w[T] + np.sum(inst.q[1 : T + 1]))
    dc = DerivedConstants(
        T=T,
        p_minus=pm,
        p_plus=pp,
        w_minus=inst.w_minus,
        w_plus=w_plus,
        q_minus=inst.q_minus,
        q_plus=q_plus,
        A=A,
        K=math.exp(log_K),
        K0=math.exp(log_K0),
        C1=(T + 1) * (w_plus + q_plus),
        log_K=log_K,
    )
    logger.debug(f"Derived constants: p-={pm:g}, p+={pp:g}, A={A:.6g}, K={dc.K:.6g}, K0={dc.K0:.6g}")
    return dc


def dhat(inst: ProblemInstance, d: float) -> float:
    """w(0)d^p(0)/p(0) + w(T)d^p(T)/p(T) + sum over k=1..T of q(k)d^p(k)/p(k)."""
    T = inst.T
    p = inst.p
    total = inst.w[0] * abs_power(d, p[0]) / p[0] + inst.w[T] * abs_power(d, p[T]) / p[T]
    ks = np.arange(1, T + 1)
    total = total + np.sum(inst.q[ks] * abs_power(d, p[ks]) / p[ks])
    return float(total)
