"""Command-line interface."""

from .main import build_parser, main
from .report import Check, ReportDocument, Tolerances, dumps, judge

__all__ = ["build_parser", "main", "Check", "ReportDocument", "Tolerances", "dumps", "judge"]
