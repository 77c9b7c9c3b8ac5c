"""Square matrices over Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from lattcert.errors import NotMonic, ParseError, PreconditionError
from lattcert.exact import linalg
from lattcert.exact.padic import prime_factors
from lattcert.exact.poly import RatPoly


@dataclass(frozen=True)
class QMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("QMatrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, d: int) -> "QMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def zero(cls, d: int) -> "QMatrix":
        return cls(tuple((0,) * d for _ in range(d)))

    @classmethod
    def parse(cls, text: str) -> "QMatrix":
        """Rows separated by ';', entries by ',' ("0,-1;1,1/2")."""
        try:
            return cls(tuple(tuple(Fraction(x.strip()) for x in r.split(",")) for r in text.split(";")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad matrix {text!r}: {exc}") from exc

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __add__(self, other):
        return QMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        return QMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, QMatrix):
            cols = list(zip(*other.rows))
            return QMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def apply(self, v) -> tuple:
        return tuple(sum(a * Fraction(x) for a, x in zip(r, v)) for r in self.rows)

    def __pow__(self, k: int) -> "QMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = QMatrix.identity(self.dim)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def det(self) -> Fraction:
        return linalg.det(self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), Fraction(0))

    def inverse(self) -> "QMatrix":
        return QMatrix(tuple(tuple(r) for r in linalg.inverse(self.rows)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def denominator(self) -> int:
        return lcm(*(x.denominator for r in self.rows for x in r))

    def denominator_primes(self) -> set:
        return set(prime_factors(self.denominator()))

    def is_scalar(self, c) -> bool:
        return self == QMatrix.identity(self.dim).scale(c)

    def to_json(self) -> list:
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, rows) -> "QMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"


def companion(f: RatPoly) -> QMatrix:
    """Ones on the subdiagonal, negated coefficients of f in the last column."""
    if f.degree < 1:
        raise PreconditionError("companion matrix needs degree >= 1")
    if not f.is_monic():
        raise NotMonic(f"{f} is not monic")
    d = f.degree
    rows = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = Fraction(1)
    for i in range(d):
        rows[i][d - 1] = -f[i]
    return QMatrix(tuple(tuple(r) for r in rows))


def char_poly(M: QMatrix) -> RatPoly:
    """det(tI - M) by the Faddeev-LeVerrier recursion."""
    n = M.dim
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    I = QMatrix.identity(n)
    Mk = QMatrix.zero(n)
    for k in range(1, n + 1):
        Mk = M * Mk + I.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(M * Mk).trace() / k
    return RatPoly(coeffs)


def poly_of_matrix(coeffs, M: QMatrix) -> QMatrix:
    acc = QMatrix.zero(M.dim)
    I = QMatrix.identity(M.dim)
    for c in reversed(list(coeffs)):
        acc = acc * M + I.scale(c)
    return acc
