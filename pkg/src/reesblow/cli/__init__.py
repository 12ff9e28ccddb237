"""Script interpreter for the reesblow library."""

from .format import format_output
from .main import main, run_script
from .session import Options, OutputRecord, Session

__all__ = ["Options", "OutputRecord", "Session", "format_output", "main", "run_script"]
