"""Solver options, seeded from the application settings."""
from dataclasses import dataclass, replace

from config.settings import get_settings


@dataclass(frozen=True)
class SolverOptions:
    """Tolerances and iteration limits shared by every solver.

    Convergence is judged on the scaled residual, not on max|r| itself:

        max|R| / (1 + max|w phi_p(du)| + max|q phi_p(u)| + lambda max|f|) <= tol

    where R is the residual summed over groups of nodes joined by rigid links
    (see ``src.functional.stiffness``). Without rigid links R is the residual.
    ``rigid_link_rel`` is the fraction of max|u| below which a link's
    equilibrium displacement counts as unresolvable.
    """

    tol: float = 1e-10
    max_iter: int = 200
    descent_max_iter: int = 20000
    armijo_c: float = 1e-4
    backtrack_shrink: float = 0.5
    max_backtracks: int = 60
    penalty_mu0: float = 1.0
    penalty_growth: float = 10.0
    penalty_max_levels: int = 12
    rigid_link_rel: float = 1e-9

    @classmethod
    def from_settings(cls, **overrides) -> "SolverOptions":
        """Options built from ``get_settings()``; keyword overrides win when not None."""
        s = get_settings()
        opts = cls(
            tol=s.solver_tol,
            max_iter=s.solver_max_iter,
            descent_max_iter=s.descent_max_iter,
            armijo_c=s.armijo_c,
            backtrack_shrink=s.backtrack_shrink,
            max_backtracks=s.max_backtracks,
            penalty_mu0=s.penalty_mu0,
            penalty_growth=s.penalty_growth,
            penalty_max_levels=s.penalty_max_levels,
            rigid_link_rel=s.rigid_link_rel,
        )
        return opts.with_overrides(**overrides)

    def with_overrides(self, **overrides) -> "SolverOptions":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
