"""Finitely presented groups and coset enumeration."""
from .coset import FELSCH, HLT, CosetTable, perm_realization, realize, regular_generating_subset, relators_close, todd_coxeter
from .presentation import (
    CAYLEY_BOUND,
    Presentation,
    cayley_presentation,
    element_words,
    presentation_for,
    presentation_on_generators,
    word_for,
)
from .words import Word, concat, evaluate, format_word, free_reduce, inverse, parse_word, power

__all__ = [name for name in dir() if not name.startswith("_")]
