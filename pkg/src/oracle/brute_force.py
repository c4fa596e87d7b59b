"""Exhaustive grid minimization of I_lambda on tiny instances."""
from dataclasses import dataclass
from typing import Iterator, Optional
import logging

import numpy as np

from config.settings import get_settings
from src.functional.energy import energy_batch
from src.model.grid import GridFunction
from src.model.problem import ProblemInstance
from src.utils.errors import InstanceTooLargeError

logger = logging.getLogger(__name__)
settings = get_settings()

MAX_T = 3
REFINE_FACTOR = 10


@dataclass
class BruteForceResult:
    u: GridFunction
    I_value: float
    step: float
    evaluations: int

    def __iter__(self) -> Iterator:
        return iter((self.u, self.I_value))


def _grid_argmin(inst: ProblemInstance, axes, lam: float) -> tuple:
    """Lowest energy over the product grid; ties go to the smallest flat index."""
    shape = tuple(len(a) for a in axes)
    total = int(np.prod(shape))
    chunk = max(1, settings.brute_force_chunk)
    best_value, best_index = np.inf, -1
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.unravel_index(flat, shape)
        X = np.column_stack([axes[j][idx[j]] for j in range(len(axes))])
        values = energy_batch(inst, X, lam)
        values = np.where(np.isnan(values), np.inf, values)
        i = int(np.argmin(values))
        if values[i] < best_value:
            best_value, best_index = float(values[i]), int(flat[i])
    point = np.array([axes[j][k] for j, k in enumerate(np.unravel_index(best_index, shape))])
    return point, best_value, total


def brute_force_min(
    inst: ProblemInstance,
    lam: float,
    box_radius: float = 2.0,
    grid_n: Optional[int] = None,
) -> BruteForceResult:
    """Grid argmin of I over [-R, R]^T, refined once on a 10x finer local grid."""
    if inst.T > MAX_T:
        raise InstanceTooLargeError(f"brute force needs T <= {MAX_T}, got T={inst.T}", T=inst.T)
    n = int(grid_n or settings.brute_force_grid_n)
    axis = np.linspace(-box_radius, box_radius, n)
    step = float(axis[1] - axis[0]) if n > 1 else 2.0 * box_radius
    logger.debug(f"Brute force over {n}^{inst.T} points, radius {box_radius:g}")

    point, value, evaluations = _grid_argmin(inst, [axis] * inst.T, lam)

    fine = step / REFINE_FACTOR
    offsets = np.linspace(-step, step, 2 * REFINE_FACTOR + 1)
    local_axes = [np.clip(x + offsets, -box_radius, box_radius) for x in point]
    local_point, local_value, extra = _grid_argmin(inst, local_axes, lam)
    if local_value < value:
        point, value = local_point, local_value

    return BruteForceResult(
        u=GridFunction.from_interior(point),
        I_value=value,
        step=fine,
        evaluations=evaluations + extra,
    )
