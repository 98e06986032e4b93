"""Exact scalar ring Q(i)[alpha] and linear algebra over its specialisations."""

from .scalar import ALPHA, I, ONE, ZERO, Scalar, ScalarParseError, conj, eval_alpha, parse_scalar, render_scalar

__all__ = [
    "ALPHA",
    "I",
    "ONE",
    "ZERO",
    "Scalar",
    "ScalarParseError",
    "conj",
    "eval_alpha",
    "parse_scalar",
    "render_scalar",
]
