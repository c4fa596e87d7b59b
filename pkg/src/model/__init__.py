"""Problem data, grid functions and the primitive F."""
from src.model.grid import GridFunction, build_test_function, coerce_grid
from src.model.problem import (
    GROWTH_HOLDS,
    GROWTH_UNVERIFIABLE,
    GROWTH_VIOLATED,
    GrowthCertificate,
    Nonlinearity,
    ProblemInstance,
    SeparableForm,
    validate_instance,
)
from src.model.potential import GrowthVerdict, check_growth, eval_F, primitive_values, quad_F

__all__ = [
    "GridFunction",
    "build_test_function",
    "coerce_grid",
    "GROWTH_HOLDS",
    "GROWTH_UNVERIFIABLE",
    "GROWTH_VIOLATED",
    "GrowthCertificate",
    "Nonlinearity",
    "ProblemInstance",
    "SeparableForm",
    "validate_instance",
    "GrowthVerdict",
    "check_growth",
    "eval_F",
    "primitive_values",
    "quad_F",
]
