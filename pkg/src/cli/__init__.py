"""Command-line package."""
from src.cli.commands import build_parser, exit_code_for, main

__all__ = ["build_parser", "exit_code_for", "main"]
