"""Hypothesis checks and the lambda-intervals they certify."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from src.functional.energy import energy_value
from src.hypotheses.constants import DerivedConstants, derived_constants, dhat
from src.hypotheses.potential_bounds import a_d_parts, max_F_on_ball, sum_F, sum_max_F
from src.model.grid import build_test_function
from src.model.potential import GrowthVerdict, check_growth, eval_F
from src.model.problem import GrowthCertificate, Nonlinearity, ProblemInstance
from src.utils.errors import (
    CertificateError,
    ConfigError,
    DegenerateDenominatorError,
    EmptyIntervalError,
    HypothesisFailedError,
    NotSeparableError,
)
from src.utils.serialization import decode, decode_float, decode_pair, encode

logger = logging.getLogger(__name__)

THEOREM_IDS = ("T1.1", "T3.2", "T3.4", "T3.5", "T3.8", "C3.9")
SHELL_FAMILY = ("T1.1", "T3.2", "T3.4", "T3.5")
SUP_BOUND_FAMILY = ("T1.1", "T3.4", "T3.5")

# f >= 0 is sampled on these magnitudes (both signs) for the sign expectation.
_SIGN_GRID = np.geomspace(1e-12, 1e12, 241)


@dataclass
class ConditionResult:
    """One hypothesis verdict; ``margin`` is positive exactly when a strict inequality holds."""

    name: str
    holds: bool
    margin: float
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return encode({"name": self.name, "holds": bool(self.holds), "margin": self.margin, "witness": self.witness})

    @classmethod
    def from_dict(cls, data: dict) -> "ConditionResult":
        return cls(
            name=data["name"],
            holds=bool(data["holds"]),
            margin=decode_float(data["margin"]),
            witness=decode(data.get("witness", {})),
        )


@dataclass
class CertificationReport:
    """Verdicts for one theorem on one instance plus everything it predicts."""

    theorem_id: str
    inputs: Dict[str, float]
    conditions: List[ConditionResult]
    interval: Optional[Tuple[float, float]] = None
    norm_bounds: Optional[Tuple[float, float]] = None
    dhat: Optional[float] = None
    r: Optional[float] = None
    shell: Optional[Tuple[float, float]] = None
    sup_bound: Optional[float] = None
    expected_sign: Optional[str] = None
    quantities: Dict[str, float] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.interval is not None

    @property
    def failed_conditions(self) -> List[str]:
        return [c.name for c in self.conditions if not c.holds]

    def condition(self, name: str) -> Optional[ConditionResult]:
        for c in self.conditions:
            if c.name == name:
                return c
        return None

    def raise_for_failure(self) -> None:
        """Raise the matching error when the report certifies nothing."""
        failed = self.failed_conditions
        if not failed:
            return
        if failed == ["nonempty-interval"]:
            raise EmptyIntervalError(
                f"{self.theorem_id}: the certified interval is empty",
                theorem=self.theorem_id,
            )
        raise HypothesisFailedError(
            f"{self.theorem_id}: failed conditions {', '.join(failed)}",
            theorem=self.theorem_id,
            failed=failed,
        )

    def to_dict(self) -> dict:
        return encode(
            {
                "theorem_id": self.theorem_id,
                "certified": self.certified,
                "inputs": self.inputs,
                "conditions": [c.to_dict() for c in self.conditions],
                "failed_conditions": self.failed_conditions,
                "interval": list(self.interval) if self.interval else None,
                "norm_bounds": list(self.norm_bounds) if self.norm_bounds else None,
                "dhat": self.dhat,
                "r": self.r,
                "shell": list(self.shell) if self.shell else None,
                "sup_bound": self.sup_bound,
                "expected_sign": self.expected_sign,
                "quantities": self.quantities,
            }
        )

    @classmethod
    def from_dict(cls, data: dict) -> "CertificationReport":
        return cls(
            theorem_id=data["theorem_id"],
            inputs=decode(data.get("inputs", {})),
            conditions=[ConditionResult.from_dict(c) for c in data.get("conditions", [])],
            interval=decode_pair(data.get("interval")),
            norm_bounds=decode_pair(data.get("norm_bounds")),
            dhat=decode_float(data.get("dhat")),
            r=decode_float(data.get("r")),
            shell=decode_pair(data.get("shell")),
            sup_bound=decode_float(data.get("sup_bound")),
            expected_sign=data.get("expected_sign"),
            quantities=decode(data.get("quantities", {})),
        )


def _log_pow(base: float, exponent: float) -> float:
    """base**exponent for base >= 0, overflowing to inf instead of raising."""
    if base == 0.0:
        return 0.0 if exponent > 0 else 1.0
    with np.errstate(over="ignore"):
        return float(np.exp(exponent * math.log(base)))


def _require_positive(**values: float) -> None:
    for name, v in values.items():
        if v is None or not (v > 0) or not math.isfinite(v):
            raise ConfigError(f"{name} must be a positive finite number, got {v}", field=name)


def _growth_condition(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    verdict: Optional[GrowthVerdict],
) -> Tuple[GrowthCertificate, ConditionResult]:
    gc = gc if gc is not None else inst.nonlinearity.growth
    if gc is None:
        raise CertificateError("a growth certificate (c0, alpha) is required for certification")
    if verdict is None:
        verdict = check_growth(inst, gc)
    return gc, ConditionResult("F1", verdict.holds, -verdict.max_excess, verdict.to_dict())


def expected_sign(inst: ProblemInstance) -> Optional[str]:
    """'nonnegative' when f >= 0 on the sample grid, 'positive' if also f(k,0) = 0."""
    xs = np.concatenate((-_SIGN_GRID[::-1], [0.0], _SIGN_GRID))
    nl = inst.nonlinearity
    zero_at_origin = True
    for k in range(1, inst.T + 1):
        with np.errstate(all="ignore"):
            values = nl.f_values(k, xs)
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            return None
        zero_at_origin = zero_at_origin and float(nl.f_values(k, 0.0)) == 0.0
    return "positive" if zero_at_origin else "nonnegative"


def in2_left_coefficient(dc: DerivedConstants) -> float:
    """K / A^{1/p+}, the factor multiplying c1 on the left of the in2 chain."""
    return dc.K / dc.A ** (1.0 / dc.p_plus)


def check_in2(dc: DerivedConstants, c1: float, d: float, c2: float) -> ConditionResult:
    """K/A^{1/p+} c1 < d < (p- K^{p+}/(p+ A))^{1/p-} c2^{p+/p-} < (p-/(p+ A))^{1/p-}."""
    pm, pp = dc.p_minus, dc.p_plus
    left = in2_left_coefficient(dc) * c1
    if c2 > 0:
        log_mid = (math.log(pm) + pp * dc.log_K - math.log(pp) - math.log(dc.A)) / pm + pp / pm * math.log(c2)
        with np.errstate(over="ignore"):
            middle = float(np.exp(log_mid))
    else:
        middle = 0.0
    right = (pm / (pp * dc.A)) ** (1.0 / pm)
    margins = [d - left, middle - d, right - middle]
    holds = left < d < middle < right
    return ConditionResult(
        "in2",
        holds,
        min(margins),
        {"left": left, "d": d, "middle": middle, "right": right, "margins": margins},
    )


def _side_condition(dc: DerivedConstants, c: float, d: float) -> ConditionResult:
    """A p+ d^{p-} < K^{p+} p- c^{p+} < p-."""
    pm, pp = dc.p_minus, dc.p_plus
    left = dc.A * pp * _log_pow(d, pm)
    middle = pm * _log_pow(c * dc.K, pp)
    right = pm
    holds = left < middle < right
    return ConditionResult(
        "side",
        holds,
        min(middle - left, right - middle),
        {"left": left, "middle": middle, "right": right},
    )


def _positive_potential(total: float) -> ConditionResult:
    return ConditionResult("positive-potential", total > 0, total, {"sum_F_d": total})


def _finish(report: CertificationReport, lower: float, upper: float) -> CertificationReport:
    nonempty = lower < upper
    margin = upper - lower
    if math.isnan(margin):
        margin = -math.inf
    report.conditions.append(
        ConditionResult("nonempty-interval", bool(nonempty), margin, {"lower": lower, "upper": upper})
    )
    report.quantities["candidate_lower"] = lower
    report.quantities["candidate_upper"] = upper
    if not report.failed_conditions:
        report.interval = (float(lower), float(upper))
        logger.info(f"{report.theorem_id} certified: lambda in ]{lower:.10g}, {upper:.10g}[")
    else:
        logger.info(f"{report.theorem_id} not certified; failed: {', '.join(report.failed_conditions)}")
    return report


def certify_t2(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c1: float,
    c2: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Two-radius certificate: lambda in ]1/a_d(c1), 1/a_d(c2)[ with the norm bounds of the solution."""
    if c1 < 0:
        raise ConfigError(f"c1 must be non-negative, got {c1}", field="c1")
    _require_positive(c2=c2, d=d)
    dc = derived_constants(inst)
    gc, f1 = _growth_condition(inst, gc, growth_verdict)
    report = CertificationReport(
        theorem_id="T3.2",
        inputs={"c1": float(c1), "c2": float(c2), "d": float(d)},
        conditions=[f1, check_in2(dc, c1, d, c2)],
        expected_sign=expected_sign(inst),
    )

    pm, pp = dc.p_minus, dc.p_plus
    report.shell = (_log_pow(c1 * dc.K, pp) / pp, _log_pow(c2 * dc.K, pp) / pp)
    report.norm_bounds = (
        (pm / pp) ** (1.0 / pm) * _log_pow(c1 * dc.K, pp / pm),
        c2 * (2 * dc.T + 2) ** ((1.0 - pm) / pm),
    )

    lower, upper = math.nan, math.nan
    try:
        q1 = a_d_parts(inst, d, c1, dc)
        q2 = a_d_parts(inst, d, c2, dc)
    except DegenerateDenominatorError as e:
        report.conditions.append(ConditionResult("a_d-denominator", False, 0.0, e.details))
    else:
        report.quantities.update(
            {
                "a_d_c1": q1.value,
                "a_d_c2": q2.value,
                "sum_F_d": q1.sum_F_d,
                "sum_max_F_c1": q1.sum_max_F,
                "sum_max_F_c2": q2.sum_max_F,
                "denominator_c1": q1.denominator,
                "denominator_c2": q2.denominator,
            }
        )
        report.conditions.append(
            ConditionResult(
                "F2",
                q2.value < q1.value and q1.value > 0,
                min(q1.value - q2.value, q1.value),
                {"a_d_c1": q1.value, "a_d_c2": q2.value},
            )
        )
        lower = 1.0 / q1.value if q1.value > 0 else math.inf
        upper = 1.0 / q2.value if q2.value > 0 else math.inf
    return _finish(report, lower, upper)


def certify_t3(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Single-radius certificate; the solution also satisfies sup|u| < c."""
    _require_positive(c=c, d=d)
    dc = derived_constants(inst)
    gc, f1 = _growth_condition(inst, gc, growth_verdict)
    pm, pp = dc.p_minus, dc.p_plus

    s_d = sum_F(inst, d)
    s_max = sum_max_F(inst, c)
    r_c = _log_pow(c * dc.K, pp) / pp
    v_d = _log_pow(d, pm) * dc.A / pm

    f3_right = pm * _log_pow(c * dc.K, pp) / (pp * _log_pow(d, pm) * dc.A) * s_d
    report = CertificationReport(
        theorem_id="T3.4",
        inputs={"c": float(c), "d": float(d)},
        conditions=[
            f1,
            _side_condition(dc, c, d),
            _positive_potential(s_d),
            ConditionResult("F3", s_max < f3_right, f3_right - s_max, {"sum_max_F": s_max, "right": f3_right}),
        ],
        expected_sign=expected_sign(inst),
    )
    _fill_single_radius(report, dc, c, r_c)

    lower = v_d / s_d if s_d > 0 else math.inf
    upper = (r_c - v_d) / (s_max - s_d) if s_max - s_d > 0 else math.inf
    report.quantities.update(
        {
            "sum_F_d": s_d,
            "sum_max_F_c": s_max,
            "a_d_c": (s_max - s_d) / (r_c - v_d) if r_c != v_d else math.nan,
            "a_d_0": s_d / v_d if v_d > 0 else math.nan,
        }
    )
    return _finish(report, lower, upper)


def _fill_single_radius(report: CertificationReport, dc: DerivedConstants, c: float, r_c: float) -> None:
    report.shell = (0.0, r_c)
    report.sup_bound = float(c)
    report.norm_bounds = (0.0, c * (2 * dc.T + 2) ** ((1.0 - dc.p_minus) / dc.p_minus))


def _g_only(inst: ProblemInstance) -> ProblemInstance:
    """The instance with f replaced by g (beta identically 1)."""
    form = inst.nonlinearity.separable
    nl = Nonlinearity.from_separable(
        beta=lambda k: np.ones(np.shape(k)),
        g=form.g,
        G=form.G,
        dg=form.dg,
    )
    return inst.with_nonlinearity(nl)


def certify_t3_separable(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Certificate for f = beta(k) g(x) with beta >= 0, stated through G."""
    form = inst.nonlinearity.separable
    if form is None:
        raise NotSeparableError("the nonlinearity has no separable form beta(k) g(x)")
    _require_positive(c=c, d=d)
    dc = derived_constants(inst)
    gc, f1 = _growth_condition(inst, gc, growth_verdict)
    pm, pp = dc.p_minus, dc.p_plus

    g_inst = _g_only(inst)
    G_d = float(eval_F(g_inst.nonlinearity, 1, d))
    G_max = max_F_on_ball(g_inst, 1, c)
    beta_sum = float(np.sum(form.beta_values(inst.ks)))
    r_c = _log_pow(c * dc.K, pp) / pp
    v_d = _log_pow(d, pm) * dc.A / pm

    f4_right = pm * _log_pow(c * dc.K, pp) / (pp * _log_pow(d, pm) * dc.A) * G_d
    report = CertificationReport(
        theorem_id="T3.5",
        inputs={"c": float(c), "d": float(d)},
        conditions=[
            f1,
            _side_condition(dc, c, d),
            _positive_potential(G_d * beta_sum),
            ConditionResult("F4", G_max < f4_right, f4_right - G_max, {"max_G": G_max, "right": f4_right}),
        ],
        expected_sign=expected_sign(inst),
    )
    _fill_single_radius(report, dc, c, r_c)

    denom_low = G_d * beta_sum
    denom_up = (G_max - G_d) * beta_sum
    lower = v_d / denom_low if denom_low > 0 else math.inf
    upper = (r_c - v_d) / denom_up if denom_up > 0 else math.inf
    report.quantities.update({"G_d": G_d, "max_G_c": G_max, "beta_sum": beta_sum})
    return _finish(report, lower, upper)


def _t1_1_shape(inst: ProblemInstance, gc: GrowthCertificate) -> ConditionResult:
    T = inst.T
    mismatches: List[str] = []
    if not np.allclose(inst.w, 1.0, rtol=0, atol=1e-12):
        mismatches.append("w != 1")
    if not np.allclose(inst.q[1:], 1.0, rtol=0, atol=1e-12):
        mismatches.append("q != 1")
    if not np.allclose(inst.p, np.arange(0, T + 2) + 3.0, rtol=0, atol=1e-12):
        mismatches.append("p(k) != k+3")
    form = inst.nonlinearity.separable
    if form is None or not np.allclose(form.beta_values(inst.ks), 1.0, rtol=0, atol=1e-12):
        mismatches.append("beta != 1")
    if not np.allclose(gc.alpha[1:], 2.0, rtol=0, atol=1e-12):
        mismatches.append("alpha != 2")
    if form is not None:
        samples = np.concatenate((-_SIGN_GRID, [0.0], _SIGN_GRID))
        if np.any(form.g_values(samples) < 0):
            mismatches.append("g takes negative values")
    return ConditionResult("shape", not mismatches, 0.0 if not mismatches else -1.0, {"mismatches": mismatches})


def certify_t1_1(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Unit-weight case p(k) = k+3 with its explicit conditions and interval.

    The explicit interval is cross-checked against the separable certificate.
    """
    if inst.nonlinearity.separable is None:
        raise NotSeparableError("T1.1 needs a separable nonlinearity g(x)")
    gc_resolved = gc if gc is not None else inst.nonlinearity.growth
    if gc_resolved is None:
        raise CertificateError("a growth certificate (c0, alpha) is required for certification")
    verdict = growth_verdict if growth_verdict is not None else check_growth(inst, gc_resolved)
    base = certify_t3_separable(inst, gc_resolved, c, d, growth_verdict=verdict)

    T = inst.T
    G_d = base.quantities["G_d"]
    G_c = base.quantities["max_G_c"]
    # log of (T+4)(2T+2)^{T+3}
    log_scale = math.log(T + 4) + (T + 3) * math.log(2 * T + 2)
    d3 = d ** 3
    middle = 3.0 * _log_pow(c, T + 4) / ((T + 2) * math.exp(log_scale))
    right = 3.0 / ((T + 2) * (T + 4))
    side = ConditionResult(
        "side-explicit",
        d3 < middle < right,
        min(middle - d3, right - middle),
        {"d3": d3, "middle": middle, "right": right},
    )
    ratio_left = G_c / _log_pow(c, T + 4)
    ratio_right = 3.0 / ((T + 2) * math.exp(log_scale)) * G_d / d3
    ratio = ConditionResult(
        "ratio-explicit",
        ratio_left < ratio_right,
        ratio_right - ratio_left,
        {"left": ratio_left, "right": ratio_right},
    )

    lower = d3 * (T + 2) / (3 * T * G_d) if G_d > 0 else math.inf
    spread = G_c - G_d
    upper = math.inf
    if spread > 0:
        upper = (3.0 * _log_pow(c, T + 4) / math.exp(log_scale) - d3 * (T + 2)) / (3 * T * spread)

    report = CertificationReport(
        theorem_id="T1.1",
        inputs={"c": float(c), "d": float(d)},
        conditions=[_t1_1_shape(inst, gc_resolved)]
        + [cond for cond in base.conditions if cond.name != "nonempty-interval"]
        + [side, ratio],
        norm_bounds=base.norm_bounds,
        shell=base.shell,
        sup_bound=base.sup_bound,
        expected_sign=base.expected_sign,
        quantities=dict(base.quantities),
    )
    sep_lower, sep_upper = base.quantities["candidate_lower"], base.quantities["candidate_upper"]
    report.quantities.update({"separable_lower": sep_lower, "separable_upper": sep_upper})
    for name, a, b in (("lower", lower, sep_lower), ("upper", upper, sep_upper)):
        if math.isfinite(a) and math.isfinite(b) and abs(a - b) > 1e-9 * abs(b):
            logger.warning(f"T1.1 explicit {name} endpoint {a:.12g} differs from the separable one {b:.12g}")
    return _finish(report, lower, upper)


def _coercivity_rays(inst: ProblemInstance, lambdas: List[float]) -> ConditionResult:
    """I along s * (1,...,1) for s up to 1e6 must be increasing over the last samples."""
    direction = build_test_function(inst, 1.0)
    scales = np.geomspace(1.0, 1e6, 25)
    worst = math.inf
    samples: Dict[str, List[float]] = {}
    for lam in lambdas:
        values = np.array([energy_value(inst, direction.scaled(s), lam) for s in scales])
        steps = np.diff(values[-6:])
        worst = min(worst, float(np.min(steps)))
        samples[f"{lam:.6g}"] = values[-6:].tolist()
    return ConditionResult("coercive", worst > 0, worst, {"scales": scales[-6:].tolist(), "I": samples})


def _f5_parts(inst: ProblemInstance, dc: DerivedConstants, gc: GrowthCertificate, c3: float) -> Dict[str, float]:
    pp = dc.p_plus
    growth_bound = inst.T * gc.c0 * (1.0 + max(c3 ** gc.alpha_plus, c3 ** gc.alpha_minus))
    r = _log_pow(c3 * dc.K, pp) / pp
    log_lhs = math.log(pp) - pp * (math.log(c3) + dc.log_K) + math.log(growth_bound)
    with np.errstate(over="ignore"):
        lhs = float(np.exp(log_lhs))
    return {"growth_bound": growth_bound, "r": r, "F5_lhs": lhs}


def certify_t4(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c3: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Unbounded certificate lambda in ]dhat / sum F(k,d), +inf[ for coercive I."""
    _require_positive(c3=c3, d=d)
    dc = derived_constants(inst)
    gc, f1 = _growth_condition(inst, gc, growth_verdict)

    root_A = dc.A ** (1.0 / dc.p_plus)
    side_left = c3 * dc.K / root_A
    side = ConditionResult(
        "side",
        1.0 / root_A > d > side_left,
        min(1.0 / root_A - d, d - side_left),
        {"upper": 1.0 / root_A, "d": d, "lower": side_left},
    )

    s_d = sum_F(inst, d)
    d_hat = dhat(inst, d)
    parts = _f5_parts(inst, dc, gc, c3)
    rhs = s_d / d_hat
    lower = d_hat / s_d if s_d > 0 else math.inf

    ray_lambdas = [lower, 1e3 * lower] if math.isfinite(lower) else [1.0]
    report = CertificationReport(
        theorem_id="T3.8",
        inputs={"c3": float(c3), "d": float(d)},
        conditions=[
            f1,
            side,
            _positive_potential(s_d),
            ConditionResult("F5", parts["F5_lhs"] < rhs, rhs - parts["F5_lhs"], {"lhs": parts["F5_lhs"], "rhs": rhs}),
            _coercivity_rays(inst, ray_lambdas),
        ],
        dhat=d_hat,
        r=parts["r"],
        expected_sign=expected_sign(inst),
    )
    report.quantities.update(
        {
            "sum_F_d": s_d,
            "dhat": d_hat,
            "F5_lhs": parts["F5_lhs"],
            "F5_rhs": rhs,
            "growth_bound": parts["growth_bound"],
            "r": parts["r"],
        }
    )
    return _finish(report, lower, math.inf)


def certify_c10(
    inst: ProblemInstance,
    gc: Optional[GrowthCertificate],
    c3: float,
    d: float,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Three-solution certificate on the bounded interval ]dhat/sum F, r/(T c0 (1 + max c3^alpha))[."""
    base = certify_t4(inst, gc, c3, d, growth_verdict)
    lower = base.quantities["candidate_lower"]
    upper = base.quantities["r"] / base.quantities["growth_bound"]
    report = CertificationReport(
        theorem_id="C3.9",
        inputs=dict(base.inputs),
        conditions=[c for c in base.conditions if c.name != "nonempty-interval"],
        dhat=base.dhat,
        r=base.r,
        expected_sign=base.expected_sign,
        quantities=dict(base.quantities),
    )
    return _finish(report, lower, upper)


def certify(
    inst: ProblemInstance,
    theorem_id: str,
    params: Dict[str, float],
    gc: Optional[GrowthCertificate] = None,
    growth_verdict: Optional[GrowthVerdict] = None,
) -> CertificationReport:
    """Dispatch on the theorem identifier with parameters c, c1, c2, c3, d."""

    def need(*names):
        missing = [n for n in names if params.get(n) is None]
        if missing:
            raise ConfigError(f"{theorem_id} needs parameter(s) {', '.join(missing)}", missing=missing)
        return [float(params[n]) for n in names]

    if theorem_id == "T3.2":
        c1, c2, d = need("c1", "c2", "d")
        return certify_t2(inst, gc, c1, c2, d, growth_verdict)
    if theorem_id == "T3.4":
        c, d = need("c", "d")
        return certify_t3(inst, gc, c, d, growth_verdict)
    if theorem_id == "T3.5":
        c, d = need("c", "d")
        return certify_t3_separable(inst, gc, c, d, growth_verdict)
    if theorem_id == "T1.1":
        c, d = need("c", "d")
        return certify_t1_1(inst, gc, c, d, growth_verdict)
    if theorem_id == "T3.8":
        c3, d = need("c3", "d")
        return certify_t4(inst, gc, c3, d, growth_verdict)
    if theorem_id == "C3.9":
        c3, d = need("c3", "d")
        return certify_c10(inst, gc, c3, d, growth_verdict)
    raise ConfigError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}")
