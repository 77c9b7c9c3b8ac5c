from lattcert.exact.padic import (
    DEFAULT_PRECISION, LaurentApprox, PadicApprox, is_prime, padic_abs, prime_factors, vp,
)
from lattcert.exact.poly import RatPoly, T, parse_poly, poly_discriminant, resultant
from lattcert.exact.roots import Splitting, hensel_lift, roots_mod_p, splits_over_qp
from lattcert.exact.sturm import IsolatingInterval, sturm_real_roots

__all__ = [
    "DEFAULT_PRECISION", "IsolatingInterval", "LaurentApprox", "PadicApprox", "RatPoly",
    "Splitting", "T", "hensel_lift", "is_prime", "padic_abs", "parse_poly",
    "poly_discriminant", "prime_factors", "resultant", "roots_mod_p", "splits_over_qp",
    "sturm_real_roots", "vp",
]
