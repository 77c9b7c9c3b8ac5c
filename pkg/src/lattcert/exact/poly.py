"""Dense univariate polynomials with rational coefficients."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from lattcert.errors import DegreeTooLow, ParseError
from lattcert.exact import linalg


class RatPoly:
    """Immutable polynomial, coefficients stored lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RatPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots) -> "RatPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def _coerce(x) -> "RatPoly":
        return x if isinstance(x, RatPoly) else RatPoly([x])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = RatPoly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.lead
        for k in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[k + other.degree] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPoly(q), RatPoly(rem[: other.degree] if other.degree > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; `x` may be any ring element that mixes with Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: "RatPoly") -> "RatPoly":
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return RatPoly(c / self.lead for c in self.coeffs)

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_poly(self)


T = RatPoly([0, 1])


def format_poly(f: RatPoly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a}{mono}"
            else:
                body = f"{a.numerator}{mono}/{a.denominator}" if a.numerator != 1 else f"{mono}/{a.denominator}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def sylvester(f: RatPoly, g: RatPoly):
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    if f.degree == 0 and g.degree == 0:
        return Fraction(1)
    return linalg.det(sylvester(f, g))


def poly_discriminant(f: RatPoly) -> Fraction:
    """(-1)^(d(d-1)/2) res(f, f') / lead(f)."""
    d = f.degree
    if d < 1:
        raise DegreeTooLow("discriminant needs degree >= 1")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lead


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\^|\+|-|\*|/|\(|\)))")


class _Parser:
    # expr   := ['-'|'+'] term (('+'|'-') term)*
    # term   := power (['*'] power | '/' INT)*
    # power  := atom ['^' INT]
    # atom   := INT | VAR | '(' expr ')'

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos}: {text[pos:]!r}")
            num, var, op = m.groups()
            if num is not None:
                self.tokens.append(("int", int(num)))
            elif var is not None:
                self.tokens.append(("var", var))
            else:
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0
        self.var = None

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_int(self):
        kind, val = self.take()
        if kind != "int":
            raise ParseError("expected an integer literal")
        return val

    def parse(self) -> RatPoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input at token {self.i}")
        return f

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.power()
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.expect_int()
                if d == 0:
                    raise ParseError("division by zero")
                acc = acc * Fraction(1, d)
            elif kind in ("int", "var") or (kind, val) == ("op", "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.expect_int()
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return RatPoly([val])
        if kind == "var":
            if self.var is None:
                self.var = val
            elif val != self.var:
                raise ParseError(f"more than one variable: {self.var}, {val}")
            return T
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> RatPoly:
    """Parse "t^3-5t^2+6t-1" or a coefficient list "c0,c1,...,cd"."""
    if "," in text:
        try:
            return RatPoly(Fraction(c.strip()) for c in text.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
    return _Parser(text).parse()
