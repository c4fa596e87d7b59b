"""Derived constants, hypothesis checks and certified lambda-intervals."""
from src.hypotheses.constants import DerivedConstants, derived_constants, dhat
from src.hypotheses.potential_bounds import ADQuotient, a_d, a_d_parts, max_F_on_ball, sum_F, sum_max_F
from src.hypotheses.certification import (
    THEOREM_IDS,
    CertificationReport,
    ConditionResult,
    certify,
    certify_c10,
    certify_t1_1,
    certify_t2,
    certify_t3,
    certify_t3_separable,
    certify_t4,
    check_in2,
    expected_sign,
    in2_left_coefficient,
)

__all__ = [
    "DerivedConstants",
    "derived_constants",
    "dhat",
    "ADQuotient",
    "a_d",
    "a_d_parts",
    "max_F_on_ball",
    "sum_F",
    "sum_max_F",
    "THEOREM_IDS",
    "CertificationReport",
    "ConditionResult",
    "certify",
    "certify_c10",
    "certify_t1_1",
    "certify_t2",
    "certify_t3",
    "certify_t3_separable",
    "certify_t4",
    "check_in2",
    "expected_sign",
    "in2_left_coefficient",
]
