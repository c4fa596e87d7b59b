"""Critical-point solvers for I_lambda."""
from src.solver.options import SolverOptions
from src.solver.results import SIGN_CLASSES, SolveResult, flag_sign_anomaly, make_result, sign_class
from src.solver.newton import solve_newton
from src.solver.descent import localized_solve, minimize_energy
from src.solver.exploration import (
    SweepEntry,
    SweepReport,
    distinct_results,
    lambda_grid,
    multi_start,
    sweep_lambda,
)

__all__ = [
    "SolverOptions",
    "SIGN_CLASSES",
    "SolveResult",
    "flag_sign_anomaly",
    "make_result",
    "sign_class",
    "solve_newton",
    "localized_solve",
    "minimize_energy",
    "SweepEntry",
    "SweepReport",
    "distinct_results",
    "lambda_grid",
    "multi_start",
    "sweep_lambda",
]
