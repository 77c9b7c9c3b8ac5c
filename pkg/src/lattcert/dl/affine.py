"""Affine maps x -> scale * x + shift of K^d acting on Diestel-Leader vertices.

K is either Q_p (``"padic"``) or F_q((s)) (``"laurent"``). A vertex
coordinate at level k is the ball c + pi^k R; the image ball is
scale * c + shift + pi^(k + v(scale)) R.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from lattcert.dl.tree import DLVertex, TreeVertex
from lattcert.errors import InsufficientPrecision, PreconditionError
from lattcert.exact.padic import LaurentApprox, PadicApprox, is_prime

FIELDS = ("padic", "laurent")


def _check_field(field, prime):
    if field not in FIELDS:
        raise PreconditionError(f"unknown field {field!r}")
    if not is_prime(prime):
        raise PreconditionError(f"{prime} is not prime")


def field_element(field: str, prime: int, digits: dict, absprec=None):
    """sum digits[j] pi^j; exact (Laurent) or to `absprec` (p-adic needs one)."""
    if field == "laurent":
        return LaurentApprox.from_digits(prime, digits, absprec)
    if absprec is None:
        x = sum(Fraction(a) * Fraction(prime) ** j for j, a in digits.items())
        return x
    return PadicApprox.from_digits(prime, digits, absprec)


def field_one(field, prime, precision):
    if field == "laurent":
        return LaurentApprox.from_int(1, prime)
    return PadicApprox.from_rational(1, prime, precision)


def field_zero(field, prime, precision):
    if field == "laurent":
        return LaurentApprox.zero(prime)
    return PadicApprox.zero(prime, precision)


def _center(field, prime, v: TreeVertex):
    digits = v.digit_map()
    if field == "laurent":
        return LaurentApprox.from_digits(prime, digits)
    return sum((Fraction(a) * Fraction(prime) ** j for j, a in digits.items()), Fraction(0))


@dataclass(frozen=True)
class AffineMap:
    field: str
    prime: int
    scales: tuple
    shifts: tuple

    def __post_init__(self):
        _check_field(self.field, self.prime)
        if len(self.scales) != len(self.shifts):
            raise ValueError("scale and shift vectors differ in length")
        if sum(s.valuation() for s in self.scales) != 0:
            raise PreconditionError("scale valuations must sum to zero")

    @classmethod
    def identity(cls, field, prime, d, precision=40):
        return cls(field, prime, (field_one(field, prime, precision),) * d,
                   (field_zero(field, prime, precision),) * d)

    @property
    def d(self) -> int:
        return len(self.scales)

    def level_shift(self) -> tuple:
        return tuple(s.valuation() for s in self.scales)

    def __call__(self, v: DLVertex) -> DLVertex:
        return affine_act(self, v)

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def agrees(self, other: "AffineMap") -> bool:
        return all(a.agrees(b) for a, b in zip(self.scales + self.shifts, other.scales + other.shifts))


def _image_coord(field, prime, s, h, v: TreeVertex) -> TreeVertex:
    k = v.level + s.valuation()
    c = _center(field, prime, v)
    x = h if c == 0 or (field == "laurent" and c.is_zero()) else s * c + h
    if x.absprec < k:
        raise InsufficientPrecision(
            f"image ball at level {k} needs digits below {k}, only {x.absprec} known"
        )
    if x.is_zero():
        return TreeVertex(k, (), prime)
    low = x.valuation_offset
    return TreeVertex(k, tuple((j, x.digit(j)) for j in range(low, k)), prime)


def affine_act(g: AffineMap, v: DLVertex) -> DLVertex:
    if v.d != g.d:
        raise PreconditionError("dimension mismatch")
    if any(c.branching != g.prime for c in v.coords):
        raise PreconditionError("vertex branching must equal the residue field size")
    return DLVertex(tuple(_image_coord(g.field, g.prime, s, h, c)
                          for s, h, c in zip(g.scales, g.shifts, v.coords)))


def compose(g: AffineMap, h: AffineMap) -> AffineMap:
    """g after h."""
    return AffineMap(g.field, g.prime,
                     tuple(a * b for a, b in zip(g.scales, h.scales)),
                     tuple(a * b + c for a, b, c in zip(g.scales, h.shifts, g.shifts)))


def inverse(g: AffineMap) -> AffineMap:
    inv = [s.inverse() for s in g.scales]
    return AffineMap(g.field, g.prime, tuple(inv), tuple(-(a * h) for a, h in zip(inv, g.shifts)))


def random_unit(rng: random.Random, field, prime, precision):
    digits = {0: rng.randrange(1, prime)}
    digits.update({j: rng.randrange(prime) for j in range(1, precision)})
    return field_element(field, prime, digits, precision)


def random_affine_map(rng: random.Random, field: str, prime: int, d: int,
                      precision: int = 40, spread: int = 2, shift_low: int = -3) -> AffineMap:
    """Scales pi^e * unit with e in [-spread, spread] summing to 0; random shifts."""
    es = [rng.randint(-spread, spread) for _ in range(d - 1)]
    es.append(-sum(es))
    scales = []
    for e in es:
        u = random_unit(rng, field, prime, precision)
        pi_e = field_element(field, prime, {e: 1}, None if field == "laurent" else e + precision)
        scales.append(u * pi_e)
    shifts = []
    for _ in range(d):
        digits = {j: rng.randrange(prime) for j in range(shift_low, shift_low + precision)}
        shifts.append(field_element(field, prime, digits, shift_low + precision))
    return AffineMap(field, prime, tuple(scales), tuple(shifts))
