"""Roots modulo p, splitting over Q_p, and Hensel lifting."""
from __future__ import annotations

import enum
from fractions import Fraction

from lattcert import kernels
from lattcert.errors import (
    BadReduction, NotMonic, NotSquarefree, PreconditionError, SingularRoot,
)
from lattcert.exact.padic import DEFAULT_PRECISION, PadicApprox, is_prime, reduce_mod, vp
from lattcert.exact.poly import RatPoly, poly_discriminant

MAX_PRIME = 10**5


class Splitting(enum.Enum):
    SPLITS = "Splits"
    DOES_NOT_SPLIT = "DoesNotSplit"
    RAMIFIED = "Ramified"


def _check_prime(p):
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")


def reduce_poly(f: RatPoly, m: int, p: int) -> list[int]:
    """Coefficients of f in Z/m (m a power of p), lowest degree first."""
    return [reduce_mod(c, m, p) for c in f.coeffs]


def _divide_linear(cs, r, p):
    # synthetic division of cs (low first) by (t - r) over F_p
    n = len(cs) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = (acc * r + cs[i]) % p
        q[i - 1] = acc
    rem = (acc * r + cs[0]) % p
    return q, rem


def roots_mod_p(f: RatPoly, p: int) -> list[tuple[int, int]]:
    """Residues r with f(r) = 0 mod p, paired with their multiplicity."""
    _check_prime(p)
    if p > MAX_PRIME:
        raise PreconditionError(f"p = {p} exceeds the exhaustive-search limit {MAX_PRIME}")
    cs = reduce_poly(f, p, p)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise BadReduction(f"f vanishes identically mod {p}")
    out = []
    for r in kernels.roots_mod_p(cs, p):
        mult, g = 0, cs
        while len(g) > 1:
            q, rem = _divide_linear(g, r, p)
            if rem:
                break
            mult += 1
            g = q
        out.append((r, mult))
    return out


def _require_monic_integral(f: RatPoly):
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    if not f.is_integral():
        raise PreconditionError(f"{f} has non-integer coefficients")


def splits_over_qp(f: RatPoly, p: int) -> Splitting:
    _require_monic_integral(f)
    _check_prime(p)
    disc = poly_discriminant(f)
    if disc == 0:
        raise NotSquarefree(f"{f} has a repeated root")
    if disc.numerator % p == 0:
        return Splitting.RAMIFIED
    distinct = roots_mod_p(f, p)
    return Splitting.SPLITS if len(distinct) == f.degree else Splitting.DOES_NOT_SPLIT


def _eval_mod(cs, x, m):
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % m
    return acc


def hensel_lift(f: RatPoly, p: int, r0: int, N: int = DEFAULT_PRECISION) -> PadicApprox:
    """Newton-lift a simple root r0 of f mod p to a root modulo p**N."""
    _check_prime(p)
    if N < 1:
        raise PreconditionError("precision must be >= 1")
    mod = p**N
    cs = reduce_poly(f, mod, p)
    ds = reduce_poly(f.derivative(), mod, p)
    if _eval_mod(cs, r0, p) != 0:
        raise PreconditionError(f"{r0} is not a root of f mod {p}")
    if _eval_mod(ds, r0, p) == 0:
        raise SingularRoot(f"f'({r0}) = 0 mod {p}")
    a, prec = r0 % p, 1
    while prec < N:
        prec = min(2 * prec, N)
        m = p**prec
        a = (a - _eval_mod(cs, a, m) * pow(_eval_mod(ds, a, m), -1, m)) % m
    return PadicApprox.from_residue(a, p, N)


def integral_roots_are_simple(f: RatPoly, p: int) -> bool:
    return all(m == 1 for _, m in roots_mod_p(f, p))


def unit_roots(f: RatPoly, p: int, N: int) -> list[PadicApprox]:
    """Hensel lifts of all simple roots of f in Z_p (f p-integral)."""
    out = []
    for r, mult in roots_mod_p(f, p):
        if mult == 1:
            out.append(hensel_lift(f, p, r, N))
    return out


def primitive_part_at(f: RatPoly, p: int) -> RatPoly:
    """Scale f by a power of p so its coefficients are p-integral with one a unit."""
    k = min(vp(c, p) for c in f.coeffs if c)
    return RatPoly(c / Fraction(p) ** k for c in f.coeffs)
