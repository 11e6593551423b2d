"""Exact Weingarten calculus for real Grassmannians, bt-monotone Hurwitz numbers,
Jack functions and b-deformed Jucys–Murphy operators."""

__version__ = "0.1.0"
