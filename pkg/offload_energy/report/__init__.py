"""Report rows, savings, aggregates and plot data."""

from .aggregate import Report, aggregate_report, format_report
from .plotdata import FIGURES, plot_table, write_covered_plots, write_plot_csv
from .rows import (
    COLUMNS, ReportRow, make_row, read_results_csv, rows_from_results, rows_to_frame, savings_percent,
    with_savings, write_results_csv,
)

__all__ = [
    "ReportRow", "COLUMNS", "make_row", "rows_from_results", "with_savings", "savings_percent",
    "rows_to_frame", "write_results_csv", "read_results_csv",
    "Report", "aggregate_report", "format_report",
    "FIGURES", "plot_table", "write_plot_csv", "write_covered_plots",
]
