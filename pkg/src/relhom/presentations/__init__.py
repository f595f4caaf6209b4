"""Words, presentations, Cayley tables and Schreier rewriting."""

from .cosets import (DEFAULT_COSET_LIMIT, CayleyGroup, QuotientMap,
                     coset_enumerate, coset_limit, evaluate)
from .parse import Presentation, parse_presentation, parse_word
from .schreier import SchreierData, rewrite_in_R, schreier_transversal
from .words import Word, reduce

__all__ = [
    "Word", "reduce", "Presentation", "parse_presentation", "parse_word",
    "CayleyGroup", "QuotientMap", "coset_enumerate", "coset_limit", "evaluate",
    "DEFAULT_COSET_LIMIT", "SchreierData", "schreier_transversal", "rewrite_in_R",
]
