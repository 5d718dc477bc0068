"""Floating-point evaluation: words, sums, constants, Mellin integrals."""
from .precision import Precision, as_precision
from .words import eval_word, eval_word_at_one, eval_word_quad

__all__ = ["Precision", "as_precision", "eval_word", "eval_word_at_one", "eval_word_quad"]
