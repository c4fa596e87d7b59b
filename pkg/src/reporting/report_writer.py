"""Machine-readable reports: versioned JSON documents and flat CSV sweep tables."""
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union
import csv
import io
import json
import logging
import sys

from config.settings import get_settings
from src.utils.errors import ConfigError
from src.utils.serialization import decode, encode

logger = logging.getLogger(__name__)
settings = get_settings()

CSV_COLUMNS = ("lambda", "converged", "I", "residual_inf", "sup_norm", "norm_minus")


class ReportWriter:
    """Builds report documents and writes them to a file or stdout."""

    def __init__(self, schema_version: Optional[str] = None):
        self.schema_version = schema_version or settings.report_schema_version

    def document(self, kind: str, payload: Dict[str, Any], source: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Wrap a payload with the schema version, the report kind and its inputs.

        Reports carry no timestamps so identical runs give identical bytes.
        """
        doc = {"schema_version": self.schema_version, "kind": kind}
        if source:
            doc["source"] = source
        doc.update(payload)
        return encode(doc)

    @staticmethod
    def render_json(doc: Dict[str, Any]) -> str:
        # float repr is the shortest round-trip decimal
        return json.dumps(encode(doc), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @staticmethod
    def render_csv(rows: Iterable[Dict[str, Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(CSV_COLUMNS), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in CSV_COLUMNS})
        return buffer.getvalue()

    def render(self, doc: Dict[str, Any], fmt: str = "json") -> str:
        if fmt == "json":
            return self.render_json(doc)
        if fmt == "csv":
            return self.render_csv(csv_rows(doc))
        raise ConfigError(f"unknown output format {fmt!r}; expected json or csv", format=fmt)

    def write(self, doc: Dict[str, Any], path: Optional[Union[str, Path]] = None, fmt: str = "json") -> str:
        """Render and write; ``path`` None means stdout. Returns the rendered text."""
        text = self.render(doc, fmt)
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            target = Path(path)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {fmt} report to {target}")
        return text


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_rows(doc: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Flatten an encoded report document (sweep, solve or multistart) into CSV rows."""
    doc = decode(doc)
    if "entries" in doc:
        results = [(e["lambda"], e.get("result")) for e in doc["entries"]]
    elif "results" in doc:
        results = [(r["lambda"], r) for r in doc["results"]]
    elif "result" in doc:
        results = [(doc["result"]["lambda"], doc["result"])]
    else:
        raise ConfigError(f"a {doc.get('kind', 'report')} report has no tabular form; use --format json")
    rows = []
    for lam, res in results:
        row: Dict[str, Any] = {"lambda": lam, "converged": bool(res and res.get("converged"))}
        if res:
            row.update({k: res.get(k) for k in ("I", "residual_inf", "sup_norm", "norm_minus")})
        rows.append(row)
    return rows


def read_report(path: Union[str, Path]) -> Dict[str, Any]:
    """Load a JSON report, restoring non-finite floats."""
    path = Path(path)
    try:
        return decode(json.loads(path.read_text(encoding="utf-8")))
    except OSError as e:
        raise ConfigError(f"cannot read report {path}: {e.strerror}", path=str(path))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}", path=str(path))
