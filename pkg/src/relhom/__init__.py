"""Integral homology of finite groups from finite presentations.

A presentation ``F -> G`` is enumerated to a Cayley table, its relation
module ``R_ab`` is built by Reidemeister-Schreier rewriting, and the Magnus
embedding ``R_ab -> ZG (x) f`` is read off from Fox derivatives.  Even
homology ``H_2n(G, M)`` is the kernel of the Magnus tensor power on
coinvariants; odd homology comes from the five-term sequence.
"""

from .errors import (BudgetExceeded, CosetLimitExceeded, EmptyRelatorError,
                     InvariantViolation, NotInRelationSubgroup, PresentationError,
                     PresentationSyntaxError, RelhomError, UnknownGeneratorError)
from .intlattice import AbInvariants, IntMat, smith, cokernel_invariants, kernel_basis
from .presentations import (CayleyGroup, Presentation, QuotientMap, Word,
                            coset_enumerate, parse_presentation, parse_word)
from .zgmod import (PresentedAbGroup, ZGMap, ZGModule, coinvariants, regular_free_module,
                    tensor, tensor_power, trivial_module)
from .foxmagnus import PresentedGroup, fox_derivative, realize, verify_relation_sequence
from .homology import (bar_homology, five_term, h1_free, h1_trivial, h_even, h_odd,
                       hopf_h2)
from .freelie import (gamma_quotient, j_n, l_n_map, lyndon_words, phi_n_map,
                      torsion_report, witt_number)
from .prescat import (coproduct, coproduct_injectivity_check, equalizer_limit,
                      find_morphism, gamma_equalizer, induced_relmod_map, splitting_check)

__version__ = "0.1.0"

__all__ = [
    "RelhomError", "PresentationError", "PresentationSyntaxError", "UnknownGeneratorError",
    "EmptyRelatorError", "CosetLimitExceeded", "NotInRelationSubgroup", "BudgetExceeded",
    "InvariantViolation", "AbInvariants", "IntMat", "smith", "cokernel_invariants",
    "kernel_basis", "CayleyGroup", "Presentation", "QuotientMap", "Word", "coset_enumerate",
    "parse_presentation", "parse_word", "PresentedAbGroup", "ZGMap", "ZGModule",
    "coinvariants", "regular_free_module", "tensor", "tensor_power", "trivial_module",
    "PresentedGroup", "fox_derivative", "realize", "verify_relation_sequence",
    "bar_homology", "five_term", "h1_free", "h1_trivial", "h_even", "h_odd", "hopf_h2",
    "gamma_quotient", "j_n", "l_n_map", "lyndon_words", "phi_n_map", "torsion_report",
    "witt_number", "coproduct", "coproduct_injectivity_check", "equalizer_limit",
    "find_morphism", "gamma_equalizer", "induced_relmod_map", "splitting_check",
]
