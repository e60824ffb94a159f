"""Symbolic calculus for CM periods and automorphic period relations."""

__version__ = "0.1.0"
