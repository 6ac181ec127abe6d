"""Command line interface and expression language."""
from .expr import ParseError, evaluate, evaluate_text, parse, unparse
from .main import build_parser, main

__all__ = ["ParseError", "parse", "evaluate", "evaluate_text", "unparse", "main", "build_parser"]
