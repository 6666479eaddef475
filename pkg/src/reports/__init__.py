"""Text and JSON rendering of analysis reports."""

from .renderer import ReportFormat, render_json, render_report, render_text

__all__ = ["ReportFormat", "render_json", "render_report", "render_text"]
