"""Exact construction, verification and classification of graded thread
modules over the positive part of the Witt algebra."""

from .exactnum import Rational, Scalar, format_scalar, parse_scalar
from .families import FamilyLabel, make_family
from .modulecore import DefiningSet

__all__ = [
    "Rational",
    "Scalar",
    "format_scalar",
    "parse_scalar",
    "FamilyLabel",
    "make_family",
    "DefiningSet",
]
