"""
Report generator for multiple output formats.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..core.errors import ContractViolationError
from .models import ErrorReport
from .storage import dumps

FLOAT_FORMAT = "%.17g"


def _markdown_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> List[str]:
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_cell(v) for v in row) + " |")
    return lines


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}" if value == value else "-"
    return str(value)


class ReportGenerator:
    """Render error reports and board tables as csv, json or md."""

    def __init__(self, output_dir: Optional[Path] = None):
        self.output_dir = Path(output_dir) if output_dir is not None else None
        if self.output_dir is not None:
            self.output_dir.mkdir(parents=True, exist_ok=True)

    def render_frame(self, frame: pd.DataFrame, index: bool = False) -> str:
        """Plot-ready CSV with full-precision floats."""
        return frame.to_csv(index=index, float_format=FLOAT_FORMAT, lineterminator="\n")

    def render_error_report(self, report: ErrorReport, fmt: str = "csv") -> str:
        """
        Render a Monte Carlo report.

        Args:
            report: ErrorReport to render
            fmt: csv (one row per sigma and method, plot-ready), json or md

        Returns:
            Report text
        """
        if fmt == "csv":
            return self.render_frame(report.to_frame())
        if fmt == "json":
            return dumps(report.to_dict())
        if fmt == "md":
            return self._error_report_markdown(report)
        raise ContractViolationError(f"Unknown report format '{fmt}'")

    def _error_report_markdown(self, report: ErrorReport) -> str:
        cfg = report.config
        lines = [
            "# Monte Carlo Error Report",
            "",
            f"- **Runs:** {cfg.get('runs')}",
            f"- **Samples:** {cfg.get('samples')}",
            f"- **Dimension:** {cfg.get('dim')}",
            f"- **Seed:** {cfg.get('seed')}",
            f"- **Skipped trials:** {report.total_skips}",
            "",
        ]
        for title, key in (("Mean e_x", "mean_ex"), ("Mean e_y", "mean_ey")):
            lines += [f"## {title}", ""]
            header = ["method"] + [f"σ={s:g}" for s in report.sigmas]
            rows = [[m] + [getattr(report.get(s, m), key) for s in report.sigmas]
                    for m in report.methods]
            lines += _markdown_table(header, rows) + [""]
        return "\n".join(lines)

    def board_summary_frame(self, tables: List[Any]) -> pd.DataFrame:
        """Normalized per-source errors: one row per method, one column per source sensor."""
        if not tables:
            raise ContractViolationError("no board tables to summarize")
        ids = tables[0].sensor_ids
        frame = pd.DataFrame(
            [t.normalized_per_source for t in tables],
            index=pd.Index([t.method for t in tables], name="method"),
            columns=[f"sensor_{k}" for k in ids],
        )
        frame["norm_min"] = [t.norm_min for t in tables]
        frame["norm_max"] = [t.norm_max for t in tables]
        return frame

    def render_board_summary(self, tables: List[Any], fmt: str = "csv") -> str:
        """Render the per-source summary of a board evaluation."""
        if fmt == "csv":
            return self.render_frame(self.board_summary_frame(tables), index=True)
        if fmt == "json":
            return dumps({"tables": [t.to_dict() for t in tables]})
        if fmt == "md":
            frame = self.board_summary_frame(tables)
            lines = [
                "# Board Calibration Transfer",
                "",
                f"Normalized per-source mean error (min = {tables[0].norm_min:.8g} -> 0, "
                f"max = {tables[0].norm_max:.8g} -> 1)",
                "",
            ]
            header = ["method"] + [f"{k}" for k in tables[0].sensor_ids]
            rows = [[method] + list(frame.loc[method].iloc[:len(header) - 1]) for method in frame.index]
            lines += _markdown_table(header, rows) + [""]
            return "\n".join(lines)
        raise ContractViolationError(f"Unknown report format '{fmt}'")

    def generate_board_reports(self, tables: List[Any], fmt: str = "csv") -> Dict[str, Path]:
        """
        Write one K×K table per method plus the summary into output_dir.

        Returns:
            Dictionary mapping table name to output file path
        """
        if self.output_dir is None:
            raise ContractViolationError("generate_board_reports needs an output directory")
        generated = {}
        for table in tables:
            file_path = self.output_dir / f"{table.method}.{'json' if fmt == 'json' else 'csv'}"
            if fmt == "json":
                text = dumps(table.to_dict())
            else:
                text = self.render_frame(table.to_frame(), index=True)
            with open(file_path, "w", newline="") as f:
                f.write(text)
            generated[table.method] = file_path

        summary_path = self.output_dir / f"summary.{fmt}"
        with open(summary_path, "w", newline="") as f:
            f.write(self.render_board_summary(tables, fmt))
        generated["summary"] = summary_path
        return generated
