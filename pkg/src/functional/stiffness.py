"""Rigid links, condensed residuals and the scaled convergence measure.

Link j joins u(j) and u(j+1) through the flux w(j)|du(j)|^{p(j)-2} du(j).
At a solution no link carries more than the total nodal force F (boundary
fluxes plus |q phi_p(u)| + lambda |f| summed over k), so a link never needs
to open wider than (F / w(j))^{1/(p(j)-1)}. When that width is below the
float64 resolution of u, the flux through the link cannot be represented:
one unit in the last place of du already carries far more than F. Such a
link is rigid. Nodes joined by rigid links form a group that moves as one
unknown, and the residual is summed over the group; the internal fluxes
telescope out of the sum exactly.
"""
from dataclasses import dataclass
from typing import List, Optional
import logging

import numpy as np

from config.settings import get_settings
from src.functional.energy import _resolve_lambda
from src.functional.gradient import link_stiffness, reaction_derivative, residual
from src.model.grid import coerce_grid
from src.model.problem import ProblemInstance
from src.utils.numerics import dphi_p, phi_p

logger = logging.getLogger(__name__)
settings = get_settings()


@dataclass(frozen=True, eq=False)
class Condensation:
    """Interior nodes 1..T partitioned into runs joined by rigid links.

    ``starts`` holds the 0-based interior index of each group's first node,
    ``rigid`` flags the interior links 1..T-1.
    """

    starts: np.ndarray
    sizes: np.ndarray
    rigid: np.ndarray

    @classmethod
    def identity(cls, T: int) -> "Condensation":
        return cls.from_rigid(np.zeros(max(T - 1, 0), dtype=bool))

    @classmethod
    def from_rigid(cls, rigid: np.ndarray) -> "Condensation":
        rigid = np.asarray(rigid, dtype=bool)
        T = rigid.size + 1
        starts = np.concatenate((np.zeros(1, dtype=int), np.flatnonzero(~rigid) + 1)).astype(int)
        sizes = np.diff(np.append(starts, T)).astype(int)
        return cls(starts=starts, sizes=sizes, rigid=rigid)

    @property
    def n_groups(self) -> int:
        return int(self.starts.size)

    @property
    def is_identity(self) -> bool:
        return not bool(self.rigid.any())

    @property
    def rigid_links(self) -> List[int]:
        """Indices j of the rigid links, each joining nodes j and j+1."""
        return [int(j) for j in np.flatnonzero(self.rigid) + 1]

    def reduce(self, values) -> np.ndarray:
        """Sum an interior vector (length T) over each group."""
        return np.add.reduceat(np.asarray(values, dtype=float), self.starts)

    def expand(self, reduced) -> np.ndarray:
        """Repeat one value per group over the group's nodes."""
        return np.repeat(np.asarray(reduced, dtype=float), self.sizes)

    def snap(self, u) -> np.ndarray:
        """Grid function with every group flattened to its mean; flat groups are left untouched."""
        values = np.array(u.values if hasattr(u, "values") else u, dtype=float)
        if self.is_identity:
            return values
        inner = values[1:-1]
        flat = np.maximum.reduceat(inner, self.starts) == np.minimum.reduceat(inner, self.starts)
        means = np.where(flat, inner[self.starts], self.reduce(inner) / self.sizes)
        values[1:-1] = self.expand(means)
        return values


def nodal_force_total(inst: ProblemInstance, u, lam: Optional[float] = None) -> float:
    """Boundary fluxes plus the sum over k of |q(k) phi(u(k))| + lambda |f(k, u(k))|."""
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    inner = values[1:-1]
    edges = np.array([values[1] - values[0], values[-1] - values[-2]])
    boundary = inst.w[[0, -1]] * np.abs(phi_p(edges, inst.p[[0, inst.T]]))
    q_term = np.abs(inst.q[1:-1] * phi_p(inner, inst.p[1:-1]))
    reaction = np.abs(inst.nonlinearity.f_values(inst.ks, inner))
    return float(np.sum(boundary) + np.sum(q_term) + abs(lam) * np.sum(reaction))


def characteristic_displacement(inst: ProblemInstance, u, lam: Optional[float] = None) -> np.ndarray:
    """(F / w(j))^{1/(p(j)-1)} for every link j = 0..T, F the total nodal force.

    All zeros when F vanishes or is not finite.
    """
    total = nodal_force_total(inst, u, lam)
    if not (total > 0 and np.isfinite(total)):
        return np.zeros(inst.T + 1)
    return np.exp((np.log(total) - np.log(inst.w)) / (inst.p[:-1] - 1.0))


def rigid_links(inst: ProblemInstance, u, lam: Optional[float] = None, rel: Optional[float] = None) -> np.ndarray:
    """Flags for the interior links 1..T-1 that are rigid at u.

    A link is rigid when both its characteristic displacement and its current
    opening are at most ``rel * max|u|``.
    """
    rel = settings.rigid_link_rel if rel is None else rel
    values = coerce_grid(u, inst.T)
    none = np.zeros(max(inst.T - 1, 0), dtype=bool)
    scale = float(np.max(np.abs(values)))
    if inst.T < 2 or not rel > 0 or not (scale > 0 and np.isfinite(scale)):
        return none
    limit = rel * scale
    width = characteristic_displacement(inst, values, lam)[1:-1]
    opening = np.abs(np.diff(values))[1:-1]
    return (width > 0) & (width <= limit) & (opening <= limit)


def condense(inst: ProblemInstance, u, lam: Optional[float] = None, rel: Optional[float] = None) -> Condensation:
    cond = Condensation.from_rigid(rigid_links(inst, u, lam, rel))
    if not cond.is_identity:
        logger.debug(f"{len(cond.rigid_links)} rigid link(s), {cond.n_groups} group(s): {cond.rigid_links}")
    return cond


def force_scale(inst: ProblemInstance, u, lam: Optional[float] = None) -> float:
    """max |w(j) phi(du(j))| + max |q(k) phi(u(k))| + lambda max |f(k, u(k))|."""
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    inner = values[1:-1]
    fl = inst.w * phi_p(np.diff(values), inst.p[:-1])
    q_term = inst.q[1:-1] * phi_p(inner, inst.p[1:-1])
    reaction = inst.nonlinearity.f_values(inst.ks, inner)
    return float(np.max(np.abs(fl)) + np.max(np.abs(q_term)) + abs(lam) * np.max(np.abs(reaction)))


def condensed_residual(inst: ProblemInstance, u, lam: Optional[float], cond: Condensation) -> np.ndarray:
    return cond.reduce(residual(inst, u, lam))


def scaled_residual(
    inst: ProblemInstance,
    u,
    lam: Optional[float] = None,
    cond: Optional[Condensation] = None,
) -> float:
    """max |condensed residual| / (1 + force_scale); ``inf`` when not finite.

    ``u`` is expected to be snapped to ``cond`` already.
    """
    cond = cond if cond is not None else condense(inst, u, lam)
    R = condensed_residual(inst, u, lam, cond)
    scale = force_scale(inst, u, lam)
    if not np.isfinite(scale):
        return float("inf")
    measure = float(np.max(np.abs(R))) / (1.0 + scale)
    return measure if np.isfinite(measure) else float("inf")


def _tridiagonal(s: np.ndarray, nodal: np.ndarray, cond: Condensation) -> np.ndarray:
    ends = cond.starts + cond.sizes
    ab = np.zeros((3, cond.n_groups))
    ab[1] = cond.reduce(nodal) + s[cond.starts] + s[ends]
    ab[0, 1:] = -s[cond.starts[1:]]
    ab[2, :-1] = -s[cond.starts[1:]]
    return ab


def condensed_jacobian(
    inst: ProblemInstance,
    u,
    lam: Optional[float],
    cond: Condensation,
    floor=None,
) -> np.ndarray:
    """Jacobian of the condensed residual in ``solve_banded`` (1, 1) layout.

    Links inside a group cancel out, so a group only feels the stiffness of
    its two outer links. Without rigid links this equals ``jacobian_banded``.

    Args:
        inst: Problem instance.
        u: Grid function snapped to ``cond``.
        lam: Parameter; defaults to ``inst.lam``.
        cond: Grouping of the interior nodes.
        floor: Optional per-link regularization, see ``link_stiffness``.

    Returns:
        Array of shape (3, n_groups).
    """
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    inner = values[1:-1]
    s = link_stiffness(inst, values, floor)
    nodal = inst.q[1:-1] * dphi_p(inner, inst.p[1:-1]) - lam * reaction_derivative(inst, inner)
    return _tridiagonal(s, nodal, cond)


def stiffness_metric(inst: ProblemInstance, u, lam: Optional[float], cond: Condensation) -> np.ndarray:
    """Positive definite tridiagonal metric for energy descent on the groups.

    Link stiffness regularized at the characteristic displacement plus the
    nonnegative part of the nodal curvature q dphi_p(u) - lambda df/dx.
    """
    lam = _resolve_lambda(inst, lam)
    values = coerce_grid(u, inst.T)
    inner = values[1:-1]
    s = link_stiffness(inst, values, characteristic_displacement(inst, values, lam))
    nodal = inst.q[1:-1] * dphi_p(inner, inst.p[1:-1]) - lam * reaction_derivative(inst, inner)
    return _tridiagonal(s, np.clip(nodal, 0.0, None), cond)
