from lattcert.matrix.qmatrix import QMatrix, char_poly, companion, poly_of_matrix
from lattcert.matrix.sl2 import (
    ModuleCertificate, generated_module, has_finite_order, is_qp_bounded_sl2, is_r_bounded_sl2,
    verify_module_witness,
)
from lattcert.matrix.units import (
    CentralizerElement, RankCertificate, ValuationVector, check_irreducible, common_ordering,
    det_centralizer, multiplicative_rank, qp_eigenvalues, unit_search, valuation_vector,
)

__all__ = [
    "CentralizerElement", "ModuleCertificate", "QMatrix", "RankCertificate", "ValuationVector",
    "char_poly", "check_irreducible", "common_ordering", "companion", "det_centralizer",
    "generated_module", "has_finite_order", "is_qp_bounded_sl2", "is_r_bounded_sl2",
    "multiplicative_rank", "poly_of_matrix", "qp_eigenvalues", "unit_search", "valuation_vector",
    "verify_module_witness",
]
