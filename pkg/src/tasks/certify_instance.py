"""Task for certifying a lambda-interval."""
from typing import Optional
import logging

from src.tasks.context import RunContext
from src.utils.errors import DbvpError

logger = logging.getLogger(__name__)


class CertificationTask:
    """Run one theorem's hypothesis checks on the configured instance."""

    def __init__(self, context: RunContext):
        self.context = context

    def execute(self, theorem: Optional[str] = None) -> dict:
        theorem = theorem or self.context.theorem
        logger.info(f"Starting certification task ({theorem})")
        try:
            report = self.context.certify(theorem)
        except DbvpError as e:
            logger.error(f"Certification failed: {e}")
            raise
        return {"certified": report.certified, "report": report.to_dict()}
