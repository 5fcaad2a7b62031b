from .complexes import GradedChainComplex, HomologyTable, homology, rank_mod_p
from .matrix import IntegerMatrix, determinant, invariant_factors, smith_normal_form
from .spectral import (
    Bicomplex,
    FilteredComplex,
    SpectralPage,
    bicomplex_pages,
    filtration_degree,
    signed_rank_sum,
    spectral_pages,
)

__all__ = [
    "Bicomplex", "FilteredComplex", "GradedChainComplex", "HomologyTable", "IntegerMatrix",
    "SpectralPage", "bicomplex_pages", "determinant", "filtration_degree", "homology",
    "invariant_factors", "rank_mod_p", "signed_rank_sum", "smith_normal_form", "spectral_pages",
]
