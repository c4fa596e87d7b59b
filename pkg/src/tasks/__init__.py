"""Tasks: one per command, each with ``execute() -> dict``."""
from src.tasks.context import RunContext
from src.tasks.inspect_instance import ConstantsTask, InstanceValidationTask
from src.tasks.certify_instance import CertificationTask
from src.tasks.solve_problem import SolveTask
from src.tasks.explore_solutions import MultiStartTask, SweepTask
from src.tasks.verify_solution import VerificationTask
from src.tasks.check_properties import PropertyCheckTask

__all__ = [
    "RunContext",
    "ConstantsTask",
    "InstanceValidationTask",
    "CertificationTask",
    "SolveTask",
    "MultiStartTask",
    "SweepTask",
    "VerificationTask",
    "PropertyCheckTask",
]
