"""Sums of squares: Gram-matrix decompositions, dual refutations, lengths."""
from .basis import SupportBasis, support_basis
from .certificate import (DECOMPOSITION, INCONCLUSIVE, NOT_SOS, SosCertificate,
                          sum_weighted_squares, verify_decomposition, verify_dual)
from .core import certify_not_sos, decompose_sos, evaluation_witness
from .facial import reduce_face, unique_gram_rank
from .gram import GramSystem, SearchOptions
from .length import LengthResult, TwoSquaresWitness, min_length, two_squares_obstruction

__all__ = [
    "SupportBasis", "support_basis", "SosCertificate", "DECOMPOSITION", "NOT_SOS",
    "INCONCLUSIVE", "verify_decomposition", "verify_dual", "sum_weighted_squares",
    "decompose_sos", "certify_not_sos", "evaluation_witness", "GramSystem", "SearchOptions",
    "reduce_face", "unique_gram_rank", "LengthResult", "TwoSquaresWitness", "min_length",
    "two_squares_obstruction",
]
