"""Utility modules."""

from .helpers import format_sig, read_json, round_sig, write_json
from .logging import setup_logging

__all__ = ["setup_logging", "format_sig", "round_sig", "read_json", "write_json"]
