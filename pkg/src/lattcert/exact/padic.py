"""Valuations and truncated elements of Q_p and F_q((s)).

`PadicApprox` and `LaurentApprox` share one surface so the tree code can
treat either field as "the" local field: ``valuation()``, ``absprec``,
``digit(j)``, ``from_digits`` and ring arithmetic.

Precision is tracked conservatively. A nonzero element stores ``N`` correct
digits starting at its valuation, so it is known modulo ``p**(v + N)``;
``absprec = v + N``. Zero at finite precision is stored with no nonzero
digits and only its ``absprec``; asking for its valuation is an error.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from lattcert.errors import BadReduction, InsufficientPrecision, ZeroValuation

DEFAULT_PRECISION = 10
PRECISION_GUARD = 2


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ZeroValuation("v_p(0) is +infinity")
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def padic_abs(x, p: int) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** (-vp(x, p))


def reduce_mod(x, m: int, p: int) -> int:
    """Image of a p-integral rational in Z/m, m a power of p."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise BadReduction(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class PadicApprox:
    prime: int
    valuation_offset: int
    unit: int  # digits as a base-p integer; 0 for zero-at-precision
    precision: int

    def __post_init__(self):
        if self.unit and self.unit % self.prime == 0:
            raise ValueError("unit part divisible by p")

    # construction

    @classmethod
    def zero(cls, p: int, absprec: int) -> "PadicApprox":
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_residue(cls, x: int, p: int, absprec: int, shift: int = 0) -> "PadicApprox":
        """The class of ``p**shift * x`` modulo ``p**(shift + absprec)``."""
        x %= p**absprec
        if x == 0:
            return cls.zero(p, shift + absprec)
        v = _vp_int(x, p)
        return cls(p, shift + v, x // p**v, absprec - v)

    @classmethod
    def from_rational(cls, x, p: int, precision: int = DEFAULT_PRECISION) -> "PadicApprox":
        """Embed a rational with `precision` correct digits after its valuation."""
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, precision)
        v = vp(x, p)
        num = x.numerator // p ** max(v, 0)
        den = x.denominator // p ** max(-v, 0)
        m = p**precision
        return cls(p, v, num * pow(den, -1, m) % m, precision)

    @classmethod
    def from_digits(cls, p: int, digits: dict, absprec: int) -> "PadicApprox":
        """Element ``sum d_j p**j`` (finite support) known modulo p**absprec."""
        support = [j for j, d in digits.items() if d % p]
        if not support:
            return cls.zero(p, absprec)
        low = min(support)
        if low >= absprec:
            return cls.zero(p, absprec)
        x = sum((d % p) * p ** (j - low) for j, d in digits.items() if low <= j < absprec)
        return cls.from_residue(x, p, absprec - low, shift=low)

    # inspection

    @property
    def absprec(self) -> int:
        return self.valuation_offset + self.precision

    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def digits(self) -> tuple:
        out, u = [], self.unit
        for _ in range(self.precision):
            out.append(u % self.prime)
            u //= self.prime
        return tuple(out)

    def valuation(self, guard: int = 0) -> int:
        """Exact valuation; refuses when fewer than `guard` + 1 digits back it."""
        if self.is_zero():
            raise InsufficientPrecision(f"zero modulo {self.prime}^{self.absprec}")
        if self.precision <= guard:
            raise InsufficientPrecision(
                f"valuation {self.valuation_offset} within {guard} digits of the precision boundary"
            )
        return self.valuation_offset

    def digit(self, j: int) -> int:
        if j >= self.absprec:
            raise InsufficientPrecision(f"digit {j} beyond precision {self.absprec}")
        if self.is_zero() or j < self.valuation_offset:
            return 0
        return self.unit // self.prime ** (j - self.valuation_offset) % self.prime

    def to_residue(self) -> int:
        """Integer representative modulo p**absprec (requires p-integrality)."""
        if self.is_zero():
            return 0
        if self.valuation_offset < 0:
            raise BadReduction("negative valuation has no residue")
        return self.unit * self.prime**self.valuation_offset % self.prime**self.absprec

    def agrees(self, other: "PadicApprox") -> bool:
        """Equal modulo the smaller of the two absolute precisions."""
        m = min(self.absprec, other.absprec)
        return all(self.digit(j) == other.digit(j) for j in range(self._low(other), m))

    def _low(self, other):
        cands = [x.valuation_offset for x in (self, other) if not x.is_zero()]
        return min(cands) if cands else 0

    # arithmetic

    def _coerce(self, other) -> "PadicApprox":
        if isinstance(other, PadicApprox):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicApprox.zero(self.prime, max(self.absprec, self.precision) + 1)
            # exact scalars get enough digits never to be the bottleneck
            need = max(self.precision, self.absprec - vp(other, self.prime), 1)
            return PadicApprox.from_rational(other, self.prime, need)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prime
        absprec = min(self.absprec, other.absprec)
        terms = [x for x in (self, other) if not x.is_zero()]
        if not terms:
            return PadicApprox.zero(p, absprec)
        low = min(x.valuation_offset for x in terms)
        if low >= absprec:
            return PadicApprox.zero(p, absprec)
        s = sum(x.unit * p ** (x.valuation_offset - low) for x in terms)
        return PadicApprox.from_residue(s, p, absprec - low, shift=low)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        m = self.prime**self.precision
        return PadicApprox(self.prime, self.valuation_offset, -self.unit % m, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prime
        if self.is_zero() and other.is_zero():
            return PadicApprox.zero(p, self.absprec + other.absprec)
        if self.is_zero():
            return PadicApprox.zero(p, self.absprec + other.valuation_offset)
        if other.is_zero():
            return PadicApprox.zero(p, other.absprec + self.valuation_offset)
        n = min(self.precision, other.precision)
        return PadicApprox(p, self.valuation_offset + other.valuation_offset,
                           self.unit * other.unit % p**n, n)

    __rmul__ = __mul__

    def inverse(self) -> "PadicApprox":
        if self.is_zero():
            raise InsufficientPrecision("cannot invert zero at finite precision")
        m = self.prime**self.precision
        return PadicApprox(self.prime, -self.valuation_offset, pow(self.unit, -1, m), self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = PadicApprox.from_rational(1, self.prime, max(self.precision, 1))
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        if self.is_zero():
            return f"O({self.prime}^{self.absprec})"
        return f"PadicApprox(p={self.prime}, v={self.valuation_offset}, digits={self.digits})"


def _trim(digits):
    lead = 0
    while lead < len(digits) and digits[lead] == 0:
        lead += 1
    return lead


@dataclass(frozen=True)
class LaurentApprox:
    """Element of F_q((s)), q prime, as a digit window without carries.

    With ``exact`` set the digit tuple is the whole Laurent polynomial and
    the element has infinite absolute precision.
    """

    prime: int
    valuation_offset: int
    coeffs: tuple
    precision: int
    exact: bool = False

    def __post_init__(self):
        if self.coeffs and self.coeffs[0] % self.prime == 0:
            raise ValueError("leading digit must be nonzero")

    @classmethod
    def zero(cls, q: int, absprec=None) -> "LaurentApprox":
        if absprec is None:
            return cls(q, 0, (), 0, exact=True)
        return cls(q, absprec, (), 0)

    @classmethod
    def from_coeffs(cls, q: int, low: int, coeffs, absprec=None) -> "LaurentApprox":
        """``sum coeffs[i] s**(low + i)``; exact when `absprec` is None."""
        cs = [c % q for c in coeffs]
        if absprec is not None:
            cs = cs[: max(absprec - low, 0)]
        k = _trim(cs)
        cs = cs[k:]
        low += k
        if absprec is None:
            while cs and cs[-1] == 0:
                cs.pop()
            if not cs:
                return cls.zero(q)
            return cls(q, low, tuple(cs), len(cs), exact=True)
        if not cs:
            return cls.zero(q, absprec)
        return cls(q, low, tuple(cs), absprec - low)

    @classmethod
    def from_digits(cls, q: int, digits: dict, absprec=None) -> "LaurentApprox":
        support = [j for j, d in digits.items() if d % q]
        if not support:
            return cls.zero(q, absprec)
        low = min(support)
        high = max(support)
        cs = [digits.get(j, 0) for j in range(low, high + 1)]
        return cls.from_coeffs(q, low, cs, absprec)

    @classmethod
    def from_int(cls, c: int, q: int) -> "LaurentApprox":
        return cls.from_coeffs(q, 0, [c])

    @property
    def absprec(self):
        return float("inf") if self.exact else self.valuation_offset + self.precision

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def digits(self) -> tuple:
        return self.coeffs + (0,) * (self.precision - len(self.coeffs))

    def valuation(self, guard: int = 0) -> int:
        if self.is_zero():
            if self.exact:
                raise ZeroValuation("valuation of exact zero")
            raise InsufficientPrecision(f"zero modulo s^{self.absprec}")
        if not self.exact and self.precision <= guard:
            raise InsufficientPrecision("valuation too close to the precision boundary")
        return self.valuation_offset

    def digit(self, j: int) -> int:
        if j >= self.absprec:
            raise InsufficientPrecision(f"digit {j} beyond precision {self.absprec}")
        k = j - self.valuation_offset
        if self.is_zero() or k < 0 or k >= len(self.coeffs):
            return 0
        return self.coeffs[k]

    def agrees(self, other: "LaurentApprox") -> bool:
        m = min(self.absprec, other.absprec)
        lows = [x.valuation_offset for x in (self, other) if not x.is_zero()]
        if not lows:
            return True
        highs = [x.valuation_offset + len(x.coeffs) for x in (self, other)]
        top = min(m, max(highs))
        return all(self.digit(j) == other.digit(j) for j in range(min(lows), int(top)))

    def _coerce(self, other):
        if isinstance(other, LaurentApprox):
            if other.prime != self.prime:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return LaurentApprox.from_int(other, self.prime)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.prime
        absprec = min(self.absprec, other.absprec)
        if self.is_zero() and other.is_zero():
            return LaurentApprox.zero(q, None if absprec == float("inf") else absprec)
        low = min(x.valuation_offset for x in (self, other) if not x.is_zero())
        high = max(x.valuation_offset + len(x.coeffs) for x in (self, other))
        cs = [(self.digit_raw(j) + other.digit_raw(j)) % q for j in range(low, high)]
        return LaurentApprox.from_coeffs(q, low, cs, None if absprec == float("inf") else int(absprec))

    __radd__ = __add__

    def digit_raw(self, j):
        k = j - self.valuation_offset
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __neg__(self):
        q = self.prime
        return LaurentApprox(q, self.valuation_offset, tuple(-c % q for c in self.coeffs),
                             self.precision, self.exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.prime
        if any(x.exact and x.is_zero() for x in (self, other)):
            return LaurentApprox.zero(q)
        if self.exact and other.exact:
            return LaurentApprox.from_coeffs(
                q, self.valuation_offset + other.valuation_offset, _convolve(self.coeffs, other.coeffs, q)
            )
        if self.is_zero() or other.is_zero():
            if self.is_zero() and other.is_zero():
                return LaurentApprox.zero(q, self.absprec + other.absprec)
            z, nz = (self, other) if self.is_zero() else (other, self)
            return LaurentApprox.zero(q, z.absprec + nz.valuation_offset)
        n = min(x.precision for x in (self, other) if not x.exact)
        cs = _convolve(self.coeffs[:n], other.coeffs[:n], q)[:n]
        v = self.valuation_offset + other.valuation_offset
        return LaurentApprox.from_coeffs(q, v, cs, v + n)

    __rmul__ = __mul__

    def inverse(self, precision: int | None = None) -> "LaurentApprox":
        """Series inverse; exact monomials stay exact."""
        q = self.prime
        if self.is_zero():
            raise InsufficientPrecision("cannot invert zero")
        if self.exact and len(self.coeffs) == 1:
            return LaurentApprox.from_coeffs(q, -self.valuation_offset, [pow(self.coeffs[0], -1, q)])
        if self.exact:
            n = precision or DEFAULT_PRECISION
        else:
            n = self.precision if precision is None else min(self.precision, precision)
        a = list(self.coeffs[:n]) + [0] * (n - min(n, len(self.coeffs)))
        inv0 = pow(a[0], -1, q)
        b = [0] * n
        for k in range(n):
            acc = 1 if k == 0 else 0
            for i in range(1, k + 1):
                acc -= a[i] * b[k - i]
            b[k] = acc * inv0 % q
        return LaurentApprox.from_coeffs(q, -self.valuation_offset, b, -self.valuation_offset + n)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentApprox.from_int(1, self.prime)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        if self.is_zero():
            return "0" if self.exact else f"O(s^{self.absprec})"
        tail = "" if self.exact else f" + O(s^{self.absprec})"
        return f"LaurentApprox(q={self.prime}, v={self.valuation_offset}, {self.coeffs}{tail})"


def _convolve(a, b, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % q for c in out]
