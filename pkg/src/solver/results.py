"""Computed critical points and their classification."""
from dataclasses import dataclass, field
from typing import List, Optional
import logging

import numpy as np

from src.functional.energy import Phi, energy_value, norm_minus, sup_norm
from src.functional.gradient import grad_I, residual
from src.functional.stiffness import condense, scaled_residual
from src.model.grid import GridFunction
from src.model.problem import ProblemInstance
from src.utils.serialization import decode, decode_float, encode

logger = logging.getLogger(__name__)

SIGN_CLASSES = ("zero", "nonnegative", "positive", "sign-changing")


def sign_class(u) -> str:
    """Classify the interior values of a grid function."""
    values = u.values if isinstance(u, GridFunction) else np.asarray(u, dtype=float)
    inner = values[1:-1]
    scale = float(np.max(np.abs(inner))) if inner.size else 0.0
    if scale <= 1e-14:
        return "zero"
    low = float(np.min(inner))
    if low > 0:
        return "positive"
    if low >= -1e-12 * scale:
        return "nonnegative"
    return "sign-changing"


@dataclass
class SolveResult:
    """A candidate critical point of I_lambda with its diagnostics.

    ``residual_inf`` is max|r| at u. ``residual_scaled`` is the convergence measure
    (residual summed over rigid groups, divided by 1 + force scale); ``converged``
    compares it with the solver tolerance. ``rigid_links`` lists the links j
    (joining nodes j and j+1) that were held flat.
    """

    u: GridFunction
    lam: float
    I_value: float
    Phi_value: float
    residual_inf: float
    grad_inf: float
    iterations: int
    converged: bool
    sign_class: str
    norm_minus: float
    sup_norm: float
    method: str = ""
    localization: Optional[dict] = None
    residual_history: List[float] = field(default_factory=list)
    anomaly: Optional[str] = None
    residual_scaled: float = 0.0
    rigid_links: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return encode(
            {
                "u": self.u.values,
                "lambda": self.lam,
                "I": self.I_value,
                "Phi": self.Phi_value,
                "residual_inf": self.residual_inf,
                "residual_scaled": self.residual_scaled,
                "rigid_links": self.rigid_links,
                "grad_inf": self.grad_inf,
                "iterations": self.iterations,
                "converged": self.converged,
                "sign_class": self.sign_class,
                "norm_minus": self.norm_minus,
                "sup_norm": self.sup_norm,
                "method": self.method,
                "localization": self.localization,
                "residual_history": self.residual_history,
                "anomaly": self.anomaly,
            }
        )

    @classmethod
    def from_dict(cls, data: dict) -> "SolveResult":
        return cls(
            u=GridFunction([decode_float(v) for v in data["u"]]),
            lam=decode_float(data["lambda"]),
            I_value=decode_float(data["I"]),
            Phi_value=decode_float(data["Phi"]),
            residual_inf=decode_float(data["residual_inf"]),
            grad_inf=decode_float(data["grad_inf"]),
            iterations=int(data["iterations"]),
            converged=bool(data["converged"]),
            sign_class=data["sign_class"],
            norm_minus=decode_float(data["norm_minus"]),
            sup_norm=decode_float(data["sup_norm"]),
            method=data.get("method", ""),
            localization=decode(data.get("localization")),
            residual_history=[decode_float(v) for v in data.get("residual_history", [])],
            anomaly=data.get("anomaly"),
            residual_scaled=decode_float(data.get("residual_scaled", data["residual_inf"])),
            rigid_links=[int(j) for j in data.get("rigid_links", [])],
        )


def make_result(
    inst: ProblemInstance,
    lam: float,
    values: np.ndarray,
    iterations: int,
    tol: float,
    method: str,
    history: Optional[List[float]] = None,
    localization: Optional[dict] = None,
    rigid_link_rel: Optional[float] = None,
) -> SolveResult:
    """Evaluate every diagnostic at ``values`` and package a SolveResult.

    Rigid groups are snapped flat first, so ``u`` may differ from ``values``
    by at most ``rigid_link_rel * max|u|``.
    """
    cond = condense(inst, values, lam, rigid_link_rel)
    u = GridFunction(cond.snap(values))
    res_inf = float(np.max(np.abs(residual(inst, u, lam)))) if inst.T else 0.0
    grad_inf = float(np.max(np.abs(grad_I(inst, u, lam))))
    measure = scaled_residual(inst, u.values, lam, cond)
    return SolveResult(
        u=u,
        lam=float(lam),
        I_value=energy_value(inst, u, lam),
        Phi_value=Phi(inst, u),
        residual_inf=res_inf,
        grad_inf=grad_inf,
        iterations=int(iterations),
        converged=measure <= tol,
        sign_class=sign_class(u),
        norm_minus=norm_minus(inst, u),
        sup_norm=sup_norm(u),
        method=method,
        localization=localization,
        residual_history=list(history or []),
        residual_scaled=measure,
        rigid_links=cond.rigid_links,
    )


def flag_sign_anomaly(result: SolveResult, expected: Optional[str]) -> SolveResult:
    """Record (and log) a sign class that contradicts the expected one."""
    if expected is None or result.sign_class == "zero":
        return result
    allowed = {"nonnegative": ("nonnegative", "positive"), "positive": ("positive", "nonnegative")}
    if result.sign_class not in allowed.get(expected, (expected,)):
        result.anomaly = f"expected a {expected} solution, got {result.sign_class}"
        logger.warning(f"Sign anomaly at lambda={result.lam:g}: {result.anomaly}")
    return result
