"""Norms, the modular phi and the energy functional I = Phi - lambda Psi."""
from dataclasses import dataclass
from typing import Optional
import logging

import numpy as np

from src.model.grid import coerce_grid
from src.model.potential import primitive_values
from src.model.problem import ProblemInstance
from src.utils.errors import ConfigError
from src.utils.numerics import abs_power, phi_p

logger = logging.getLogger(__name__)


def _resolve_lambda(inst: ProblemInstance, lam: Optional[float]) -> float:
    lam = inst.lam if lam is None else lam
    if lam is None:
        raise ConfigError("lambda is required for this evaluation")
    return float(lam)


def _weighted_sum(inst: ProblemInstance, u: np.ndarray, exp_w, exp_q) -> float:
    du = np.diff(u)
    return float(np.sum(inst.w * abs_power(du, exp_w) + inst.q[1:] * abs_power(u[1:], exp_q)))


def norm_minus(inst: ProblemInstance, u) -> float:
    """The norm of W built with the exponent p-."""
    values = coerce_grid(u, inst.T)
    pm = inst.p_minus
    return _weighted_sum(inst, values, pm, pm) ** (1.0 / pm)


def norm_plus(inst: ProblemInstance, u) -> float:
    """The equivalent norm built with the exponent p+."""
    values = coerce_grid(u, inst.T)
    pp = inst.p_plus
    return _weighted_sum(inst, values, pp, pp) ** (1.0 / pp)


def sup_norm(u) -> float:
    values = u.values if hasattr(u, "values") else np.asarray(u, dtype=float)
    inner = values[1:-1]
    return float(np.max(np.abs(inner))) if inner.size else 0.0


def modular_phi(inst: ProblemInstance, u) -> float:
    """Sum of w(k-1)|du(k-1)|^p(k-1) + q(k)|u(k)|^p(k) over k = 1..T+1."""
    values = coerce_grid(u, inst.T)
    return _weighted_sum(inst, values, inst.p[:-1], inst.p[1:])


def Phi(inst: ProblemInstance, u) -> float:
    values = coerce_grid(u, inst.T)
    du = np.diff(values)
    terms = inst.w / inst.p[:-1] * abs_power(du, inst.p[:-1])
    terms = terms + inst.q[1:] / inst.p[1:] * abs_power(values[1:], inst.p[1:])
    return float(np.sum(terms))


def Psi(inst: ProblemInstance, u) -> float:
    values = coerce_grid(u, inst.T)
    return float(np.sum(primitive_values(inst.nonlinearity, inst.ks, values[1:-1])))


@dataclass(frozen=True, eq=False)
class EnergyBreakdown:
    """Every piece of I at one grid function."""

    phi_value: float
    Phi_value: float
    Psi_value: float
    I_value: float
    per_k_flux: np.ndarray
    lam: float

    def to_dict(self) -> dict:
        return {
            "phi": self.phi_value,
            "Phi": self.Phi_value,
            "Psi": self.Psi_value,
            "I": self.I_value,
            "lambda": self.lam,
            "per_k_flux": self.per_k_flux.tolist(),
        }


def energy(inst: ProblemInstance, u, lam: Optional[float] = None) -> EnergyBreakdown:
    """Evaluate phi, Phi, Psi and I = Phi - lambda Psi at u."""
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)

    phi_value = modular_phi(inst, values)
    Phi_value = Phi(inst, values)
    Psi_value = Psi(inst, values)
    I_value = Phi_value - lam * Psi_value

    lo, hi = phi_value / inst.p_plus, phi_value / inst.p_minus
    slack = 1e-12 * max(1.0, abs(phi_value))
    if not (lo - slack <= Phi_value <= hi + slack):
        logger.warning(f"Phi={Phi_value:.6g} outside [phi/p+, phi/p-]=[{lo:.6g}, {hi:.6g}]")

    flux = inst.w * phi_p(np.diff(values), inst.p[:-1])
    return EnergyBreakdown(
        phi_value=phi_value,
        Phi_value=Phi_value,
        Psi_value=Psi_value,
        I_value=I_value,
        per_k_flux=flux,
        lam=lam,
    )


def energy_value(inst: ProblemInstance, u, lam: Optional[float] = None) -> float:
    lam = _resolve_lambda(inst, lam)
    return Phi(inst, u) - lam * Psi(inst, u)


def energy_batch(inst: ProblemInstance, interiors: np.ndarray, lam: float) -> np.ndarray:
    """I at many grid functions given by their interior values (shape (N, T))."""
    X = np.atleast_2d(np.asarray(interiors, dtype=float))
    n = X.shape[0]
    zeros = np.zeros((n, 1))
    U = np.hstack((zeros, X, zeros))
    dU = np.diff(U, axis=1)
    phi_terms = inst.w / inst.p[:-1] * abs_power(dU, inst.p[:-1])
    phi_terms = phi_terms + inst.q[1:] / inst.p[1:] * abs_power(U[:, 1:], inst.p[1:])
    ks = np.broadcast_to(inst.ks, X.shape)
    psi = primitive_values(inst.nonlinearity, ks, X).sum(axis=1)
    return phi_terms.sum(axis=1) - lam * psi
