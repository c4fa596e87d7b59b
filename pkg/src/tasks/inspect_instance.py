"""Tasks that inspect an instance without solving it."""
from typing import Optional
import logging

from src.functional.energy import Phi
from src.hypotheses.constants import derived_constants, dhat
from src.model.grid import build_test_function
from src.model.problem import validate_instance
from src.tasks.context import RunContext

logger = logging.getLogger(__name__)


class InstanceValidationTask:
    """Check the standing assumptions and the growth certificate."""

    def __init__(self, context: RunContext):
        self.context = context

    def execute(self) -> dict:
        logger.info("Starting instance validation task")
        inst = self.context.inst
        violations = validate_instance(inst)

        growth = None
        if inst.nonlinearity.growth is not None and not violations:
            verdict = self.context.growth_verdict()
            if verdict is not None:
                growth = verdict.to_dict()
                if not verdict.holds:
                    violations.append(f"growth certificate {verdict.status}")

        for v in violations:
            logger.warning(f"Violation: {v}")
        logger.info(f"Validation complete: {len(violations)} violation(s)")
        return {
            "valid": not violations,
            "violations": violations,
            "growth": growth,
            "p_minus": inst.p_minus,
            "p_plus": inst.p_plus,
        }


class ConstantsTask:
    """Derived constants, plus dhat and Phi of the test function when d is known."""

    def __init__(self, context: RunContext):
        self.context = context

    def execute(self, d: Optional[float] = None) -> dict:
        inst = self.context.inst
        d = self.context.params.get("d") if d is None else d
        result = {"constants": derived_constants(inst).to_dict()}
        if d is not None:
            result["d"] = d
            result["dhat"] = dhat(inst, d)
            result["Phi_test_function"] = Phi(inst, build_test_function(inst, d))
        logger.info(f"Constants computed for T={inst.T}")
        return result
