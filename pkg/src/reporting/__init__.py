"""Reporting package: JSON/CSV report documents and published-value comparison."""
from src.reporting.report_writer import CSV_COLUMNS, ReportWriter, csv_rows, read_report
from src.reporting.discrepancy import DiscrepancyEntry, compare_values, discrepancy_section

__all__ = [
    "CSV_COLUMNS",
    "ReportWriter",
    "csv_rows",
    "read_report",
    "DiscrepancyEntry",
    "compare_values",
    "discrepancy_section",
]
