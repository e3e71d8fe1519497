"""Finite automata and the projected measures built on them."""
from .dfa import (Dfa, complement, determinize, dfa_from_words, empty_dfa, equivalent,
                  includes, is_minimal_form, minimize, parse_dfa, product, project_dfa,
                  serialize_dfa, union, universal_dfa)
from .projected import (dfa_of_log, dfa_of_model, prec_P, project, projected_precision,
                        projected_recall, rec_E)

__all__ = [
    "Dfa", "complement", "determinize", "dfa_from_words", "empty_dfa", "equivalent", "includes",
    "is_minimal_form", "minimize", "parse_dfa", "product", "project_dfa", "serialize_dfa", "union",
    "universal_dfa", "dfa_of_log", "dfa_of_model", "prec_P", "project", "projected_precision",
    "projected_recall", "rec_E",
]
