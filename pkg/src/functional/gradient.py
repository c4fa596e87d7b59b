"""Euler-Lagrange residual, derivative of I and its tridiagonal Jacobian."""
from typing import Optional
import logging

import numpy as np

from config.settings import get_settings
from src.functional.energy import _resolve_lambda
from src.model.grid import coerce_grid
from src.model.problem import ProblemInstance
from src.utils.numerics import dphi_p, phi_p

logger = logging.getLogger(__name__)
settings = get_settings()

# rows of the identity pushed through the pairing at once
_PAIRING_CHUNK = 512


def flux(inst: ProblemInstance, u) -> np.ndarray:
    """w(j)|du(j)|^{p(j)-2} du(j) for j = 0..T."""
    values = coerce_grid(u, inst.T)
    return inst.w * phi_p(np.diff(values), inst.p[:-1])


def residual(inst: ProblemInstance, u, lam: Optional[float] = None) -> np.ndarray:
    """Left side of the difference equation at k = 1..T (zero at a solution)."""
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    fl = inst.w * phi_p(np.diff(values), inst.p[:-1])
    inner = values[1:-1]
    reaction = inst.nonlinearity.f_values(inst.ks, inner)
    return (fl[:-1] - fl[1:]) + inst.q[1:-1] * phi_p(inner, inst.p[1:-1]) - lam * reaction


def pairing(inst: ProblemInstance, u, V, lam: Optional[float] = None) -> np.ndarray:
    """I'(u)(v) for each row v of V (grid functions of length T+2).

    Sum over k=1..T+1 of w(k-1) phi(du(k-1)) dv(k-1) + q(k) phi(u(k)) v(k),
    minus lambda times the sum over k=1..T of f(k,u(k)) v(k).
    """
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    V = np.atleast_2d(np.asarray(V, dtype=float))
    fl = inst.w * phi_p(np.diff(values), inst.p[:-1])
    inner = values[1:-1]
    q_term = inst.q[1:-1] * phi_p(inner, inst.p[1:-1])
    reaction = inst.nonlinearity.f_values(inst.ks, inner)
    dV = np.diff(V, axis=1)
    return dV @ fl + V[:, 1:-1] @ q_term - lam * (V[:, 1:-1] @ reaction)


def grad_I(inst: ProblemInstance, u, lam: Optional[float] = None) -> np.ndarray:
    """Components I'(u)(e_k), k = 1..T, through the pairing with coordinate functions."""
    T = inst.T
    out = np.empty(T)
    for start in range(0, T, _PAIRING_CHUNK):
        stop = min(start + _PAIRING_CHUNK, T)
        E = np.zeros((stop - start, T + 2))
        E[np.arange(stop - start), np.arange(start, stop) + 1] = 1.0
        out[start:stop] = pairing(inst, u, E, lam)
    return out


def directional_derivative(inst: ProblemInstance, u, v, lam: Optional[float] = None) -> float:
    """I'(u)(v)."""
    v_values = coerce_grid(v, inst.T)
    return float(np.dot(grad_I(inst, u, lam), v_values[1:-1]))


def reaction_derivative(inst: ProblemInstance, inner: np.ndarray) -> np.ndarray:
    """d/dx f(k, x) at x = u(k); analytic when registered, else central differences."""
    nl = inst.nonlinearity
    analytic = nl.df_values(inst.ks, inner)
    if analytic is not None:
        return analytic
    h = settings.jacobian_fd_rel_step * np.maximum(1.0, np.abs(inner))
    return (nl.f_values(inst.ks, inner + h) - nl.f_values(inst.ks, inner - h)) / (2.0 * h)


def link_stiffness(inst: ProblemInstance, u, floor=None) -> np.ndarray:
    """Derivative of each link flux w(j)|du(j)|^{p(j)-2} du(j) with respect to du(j), j = 0..T.

    With ``floor`` the magnitude |du| is replaced by sqrt(du^2 + floor^2), which keeps
    flat links coupled when p(j) > 2.
    """
    values = coerce_grid(u, inst.T)
    du = np.diff(values)
    if floor is not None:
        du = np.sqrt(du ** 2 + np.asarray(floor, dtype=float) ** 2)
    return inst.w * dphi_p(du, inst.p[:-1])


def jacobian_banded(inst: ProblemInstance, u, lam: Optional[float] = None, floor=None) -> np.ndarray:
    """Tridiagonal Jacobian of the residual in scipy ``solve_banded`` (1, 1) layout.

    Args:
        inst: Problem instance.
        u: Grid function (length T+2, boundary values included).
        lam: Parameter; defaults to ``inst.lam``.
        floor: Optional per-link regularization (length T+1) passed to
            :func:`link_stiffness`; ``None`` gives the exact Jacobian.

    Returns:
        Array of shape (3, T): super-diagonal, diagonal and sub-diagonal rows.
    """
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    inner = values[1:-1]
    s = link_stiffness(inst, values, floor)
    ab = np.zeros((3, inst.T))
    ab[1] = s[:-1] + s[1:] + inst.q[1:-1] * dphi_p(inner, inst.p[1:-1]) - lam * reaction_derivative(inst, inner)
    ab[0, 1:] = -s[1:-1]
    ab[2, :-1] = -s[1:-1]
    return ab


def banded_to_dense(ab: np.ndarray) -> np.ndarray:
    T = ab.shape[1]
    return np.diag(ab[1]) + np.diag(ab[0, 1:], 1) + np.diag(ab[2, :-1], -1) if T > 1 else np.diag(ab[1])
