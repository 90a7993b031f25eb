"""Three-sorted language over (K, k, G): syntax, printing and evaluation."""

from .evaluator import Assignment, eval_formula, eval_term, normalize_forall_k
from .parser import free_variable_sorts, parse_formula, parse_term
from .printer import to_text

__all__ = ['Assignment', 'eval_formula', 'eval_term', 'normalize_forall_k',
           'free_variable_sorts', 'parse_formula', 'parse_term', 'to_text']
