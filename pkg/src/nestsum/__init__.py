"""Nested sums, iterated integrals and multiple zeta values: exact algebra plus numerics."""
from .errors import DomainError, NestsumError, NumericError, ParseError, ResourceError, SemanticError
from .expr import CSum, Const, Expr, HSum, HWord, SSum, canonicalize, weight
from .grammar import format_expr, from_json, parse, to_json

__all__ = [
    "CSum", "Const", "Expr", "HSum", "HWord", "SSum",
    "canonicalize", "weight", "parse", "format_expr", "to_json", "from_json",
    "NestsumError", "ParseError", "SemanticError", "DomainError", "NumericError", "ResourceError",
]
__version__ = "0.1.0"
