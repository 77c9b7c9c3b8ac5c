"""Primes at which a monic integer polynomial splits into distinct linear factors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from lattcert.errors import NotSquarefree, PreconditionError
from lattcert.exact.poly import RatPoly, poly_discriminant
from lattcert.exact.roots import MAX_PRIME, Splitting, splits_over_qp
from lattcert.matrix.units import check_irreducible


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    a, b = x.numerator, x.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


def expected_density(f: RatPoly):
    """1/[L:Q] for the splitting field L when the degree pins it down (d <= 3), else None."""
    d = f.degree
    if d == 1:
        return Fraction(1)
    if d == 2:
        return Fraction(1, 2)
    if d == 3:
        return Fraction(1, 3) if is_square(poly_discriminant(f)) else Fraction(1, 6)
    return None


@dataclass
class SplittingReport:
    primes: list
    ramified: list
    bound: int
    prime_count: int
    expected: Fraction | None

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.primes), self.prime_count) if self.prime_count else Fraction(0)

    def to_json(self) -> dict:
        return {
            "primes": self.primes,
            "ramified": self.ramified,
            "bound": self.bound,
            "density": {
                "splitting": len(self.primes),
                "primes_up_to_bound": self.prime_count,
                "ratio": str(self.density),
                "ratio_float": round(float(self.density), 6),
                "expected": None if self.expected is None else str(self.expected),
            },
        }


def splitting_prime_set(f: RatPoly, bound: int) -> SplittingReport:
    """All p <= bound where f splits over Q_p (unramified), plus the ramified primes."""
    if bound > MAX_PRIME:
        raise PreconditionError(f"bound {bound} exceeds {MAX_PRIME}")
    if not f.is_monic() or not f.is_integral():
        raise PreconditionError(f"{f} must be monic with integer coefficients")
    if poly_discriminant(f) == 0:
        raise NotSquarefree(f"{f} has a repeated root")
    if f.degree <= 3:
        check_irreducible(f)
    ps = primes_up_to(bound)
    splitting, ramified = [], []
    for p in ps:
        s = splits_over_qp(f, p)
        if s is Splitting.SPLITS:
            splitting.append(p)
        elif s is Splitting.RAMIFIED:
            ramified.append(p)
    return SplittingReport(splitting, ramified, bound, len(ps), expected_density(f))
