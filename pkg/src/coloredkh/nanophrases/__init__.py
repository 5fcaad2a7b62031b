"""Nanophrase homotopy, sign functors and the bridge to link invariants."""
from .bridge import (
    NanophraseInvariants,
    from_gauss,
    lift_one,
    nanophrase_invariants,
    project_p,
    reidemeister_neighbors,
    to_gauss,
)
from .data import ONE, STAR, TARGETS, TWO, ZERO, HomotopyData, diagonal_data, make_s_sharp, parse_data
from .functors import FUNCTORS, SignProfile, functor_U, functor_V, functor_V1, functor_V2, sign_couple
from .phrase import Nanophrase, apply_move, canonicalize, neighbors, parse_phrase, parse_phrase_with_data
from .search import BUDGET_EXCEEDED, NO_WITHIN_BOUND, YES, HomotopyResult, homotopic

__all__ = [
    "HomotopyData", "make_s_sharp", "diagonal_data", "parse_data", "STAR", "ONE", "TWO", "ZERO", "TARGETS",
    "Nanophrase", "parse_phrase", "parse_phrase_with_data", "apply_move", "canonicalize", "neighbors",
    "homotopic", "HomotopyResult", "YES", "NO_WITHIN_BOUND", "BUDGET_EXCEEDED",
    "FUNCTORS", "SignProfile", "sign_couple", "functor_V", "functor_V1", "functor_V2", "functor_U",
    "to_gauss", "from_gauss", "reidemeister_neighbors", "project_p", "lift_one", "nanophrase_invariants", "NanophraseInvariants",
]
