from .app import build_parser, main
from .report import ExitCode, RunReport

__all__ = ["ExitCode", "RunReport", "build_parser", "main"]
