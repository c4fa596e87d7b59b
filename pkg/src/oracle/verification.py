"""Independent checks of a claimed solution."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import logging

import numpy as np

from src.functional.energy import Phi, norm_minus, sup_norm
from src.functional.gradient import residual
from src.functional.stiffness import condense, scaled_residual
from src.hypotheses.certification import CertificationReport
from src.model.grid import GridFunction
from src.model.problem import ProblemInstance
from src.solver.results import sign_class
from src.utils.serialization import encode

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
NONTRIVIAL_TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float

    def to_dict(self) -> dict:
        return encode({"name": self.name, "passed": self.passed, "value": self.value, "tolerance": self.tolerance})


@dataclass
class VerificationVerdict:
    """All checks plus informational diagnostics; ``overall`` is their conjunction."""

    checks: List[CheckResult] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Optional[CheckResult]:
        return next((c for c in self.checks if c.name == name), None)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, value: float, tolerance: float) -> None:
        self.checks.append(CheckResult(name, bool(passed), float(value), float(tolerance)))

    def to_dict(self) -> dict:
        return encode(
            {
                "overall": self.overall,
                "checks": [c.to_dict() for c in self.checks],
                "diagnostics": self.diagnostics,
            }
        )


def verify_solution(
    inst: ProblemInstance,
    lam: float,
    u,
    report: Optional[CertificationReport] = None,
    localized: bool = False,
) -> VerificationVerdict:
    """Check boundary values, residual, nontriviality and the report's predictions.

    The residual check uses the scaled residual of ``src.functional.stiffness``
    on u as given (no snapping); the raw max|r| is kept in the diagnostics.
    """
    values = np.array(u.values if isinstance(u, GridFunction) else u, dtype=float)
    verdict = VerificationVerdict()

    edge = float(max(abs(values[0]), abs(values[-1])))
    verdict.add("boundary", edge == 0.0, edge, 0.0)
    if edge != 0.0:
        logger.warning(f"Claimed solution has nonzero boundary values ({edge:g}); checking its projection")
        values[0] = values[-1] = 0.0
    u_w = GridFunction(values)

    # residual summed over rigid groups, relative to 1 + force scale
    cond = condense(inst, u_w, lam)
    measure = scaled_residual(inst, values, lam, cond)
    res = residual(inst, u_w, lam)
    verdict.add("residual", measure <= RESIDUAL_TOL, measure, RESIDUAL_TOL)
    verdict.diagnostics.update(
        {"raw_residual_inf": float(np.max(np.abs(res))), "rigid_links": cond.rigid_links}
    )
    if not measure <= RESIDUAL_TOL:
        verdict.diagnostics["residual"] = res.tolist()

    sup = sup_norm(u_w)
    verdict.add("nontrivial", sup > NONTRIVIAL_TOL, sup, NONTRIVIAL_TOL)

    nm = norm_minus(inst, u_w)
    if report is not None:
        if report.interval is not None:
            lo, hi = report.interval
            verdict.add("lambda-in-interval", lo < lam < hi, lam, 0.0)
        if report.norm_bounds is not None:
            lo, hi = report.norm_bounds
            verdict.add("norm-bounds", lo < nm < hi, nm, 0.0)
        if report.sup_bound is not None:
            verdict.add("sup-bound", sup < report.sup_bound, sup, report.sup_bound)
        if localized and report.shell is not None:
            r1, r2 = report.shell
            value = Phi(inst, u_w)
            verdict.add("shell", r1 < value < r2, value, 0.0)

    cls = sign_class(u_w)
    expected = report.expected_sign if report is not None else None
    verdict.diagnostics.update({"sign_class": cls, "expected_sign": expected, "norm_minus": nm, "sup_norm": sup})
    if expected is not None and cls not in ("zero", "nonnegative", "positive"):
        verdict.diagnostics["sign_anomaly"] = f"expected {expected}, got {cls}"
        logger.warning(f"Sign anomaly: expected a {expected} solution, got {cls}")

    outcome = "passed" if verdict.overall else "failed"
    logger.info(f"Verification {outcome}: {', '.join(verdict.failed) or 'all checks'}")
    return verdict
