"""Ground-truth machinery: brute force, verification and property sampling."""
from src.oracle.brute_force import BruteForceResult, brute_force_min
from src.oracle.verification import CheckResult, VerificationVerdict, verify_solution
from src.oracle.properties import coercivity_probe, property_suite, random_grid_function, random_instance

__all__ = [
    "BruteForceResult",
    "brute_force_min",
    "CheckResult",
    "VerificationVerdict",
    "verify_solution",
    "coercivity_probe",
    "property_suite",
    "random_grid_function",
    "random_instance",
]
