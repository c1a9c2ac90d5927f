"""Exact construction and verification of exceptional Krawtchouk polynomials."""
from __future__ import annotations

from .algebra import Polynomial, QuasiPolynomial, RationalFunction, parse_rational, resultant
from .krawtchouk import KrawtchoukParams, krawtchouk
from .xkrawtchouk import xk

__all__ = [
    "KrawtchoukParams",
    "Polynomial",
    "QuasiPolynomial",
    "RationalFunction",
    "krawtchouk",
    "parse_rational",
    "resultant",
    "xk",
]
