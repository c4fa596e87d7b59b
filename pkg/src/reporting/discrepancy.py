"""Compare published example values with their recomputation."""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence
import logging
import math

from config.settings import get_settings
from src.hypotheses.certification import CertificationReport
from src.ingestion.config_document import ReferenceValue
from src.utils.serialization import encode

logger = logging.getLogger(__name__)
settings = get_settings()


@dataclass
class DiscrepancyEntry:
    theorem: str
    quantity: str
    label: str
    published: float
    recomputed: Optional[float]
    ratio: Optional[float]
    agrees: bool

    def to_dict(self) -> dict:
        return encode(
            {
                "theorem": self.theorem,
                "quantity": self.quantity,
                "label": self.label,
                "published": self.published,
                "recomputed": self.recomputed,
                "ratio": self.ratio,
                "agrees": self.agrees,
            }
        )


def compare_values(published: float, recomputed: Optional[float], rel_tol: float) -> tuple:
    """(ratio recomputed/published, agreement within rel_tol)."""
    if recomputed is None or not math.isfinite(recomputed) or published == 0:
        return None, False
    ratio = recomputed / published
    return ratio, abs(recomputed - published) <= rel_tol * abs(published)


def discrepancy_section(
    references: Sequence[ReferenceValue],
    reports: Dict[str, CertificationReport],
    rel_tol: Optional[float] = None,
) -> List[DiscrepancyEntry]:
    """One entry per published value; nothing published is treated as truth."""
    rel_tol = settings.discrepancy_rel_tol if rel_tol is None else rel_tol
    entries: List[DiscrepancyEntry] = []
    for ref in references:
        report = reports.get(ref.theorem)
        recomputed = None
        if report is not None:
            value = report.quantities.get(ref.quantity)
            recomputed = None if value is None else float(value)
        ratio, agrees = compare_values(ref.value, recomputed, rel_tol)
        entry = DiscrepancyEntry(
            theorem=ref.theorem,
            quantity=ref.quantity,
            label=ref.label or ref.quantity,
            published=ref.value,
            recomputed=recomputed,
            ratio=ratio,
            agrees=agrees,
        )
        if not agrees:
            shown = "n/a" if recomputed is None else f"{recomputed:.10g}"
            logger.warning(
                f"{ref.theorem} {entry.label}: published {ref.value:.10g}, recomputed {shown}"
                + (f" (ratio {ratio:.6g})" if ratio is not None else "")
            )
        entries.append(entry)
    return entries
