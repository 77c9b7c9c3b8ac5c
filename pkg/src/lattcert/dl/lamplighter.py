"""The groups Lambda_d(q) = F_q[t, 1/t, 1/(t+1), ..., 1/(t+d-2)] x| Z^(d-1).

Ring elements are num / prod (t+i)^e_i with num in F_q[t] (low-first
coefficient tuples). The i-th Z factor acts by multiplication by t+i, so
(r, s)(r', s') = (r + chi(s) r', s + s') with chi(s) = prod (t+i)^s_i.
For d = 2 this is the lamplighter group Z/q wr Z.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from lattcert.dl.affine import AffineMap
from lattcert.errors import PreconditionError
from lattcert.exact.padic import DEFAULT_PRECISION, LaurentApprox, is_prime

# -- F_q[t] ------------------------------------------------------------------


def ptrim(a, q):
    a = [c % q for c in a]
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(a, b, q):
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], q)


def pneg(a, q):
    return ptrim([-c for c in a], q)


def pmul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return ptrim(out, q)


def ppow(a, k, q):
    out = (1,)
    for _ in range(k):
        out = pmul(out, a, q)
    return out


def peval(a, x, q):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % q
    return acc


def pdiv_linear(a, i, q):
    """Quotient of a by (t + i), assuming exact division."""
    # synthetic division at the root -i
    n = len(a) - 1
    out = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = (acc * (-i) + a[k]) % q
        out[k - 1] = acc
    assert (acc * (-i) + a[0]) % q == 0
    return ptrim(out, q)


def psubst_shift(a, c, q):
    """a(x + c) as a polynomial in x."""
    out = ()
    for coef in reversed(a):
        out = padd(pmul(out, (c % q, 1), q), (coef,), q)
    return out


def linear(i, q):
    return ptrim([i, 1], q)


# -- group elements ----------------------------------------------------------


@dataclass(frozen=True)
class LambdaElement:
    d: int
    q: int
    num: tuple = ()
    exps: tuple = None
    shift: tuple = None

    def __post_init__(self):
        k = self.d - 1
        exps = tuple(self.exps) if self.exps is not None else (0,) * k
        shift = tuple(self.shift) if self.shift is not None else (0,) * k
        if len(exps) != k or len(shift) != k:
            raise ValueError("exponent and shift vectors must have length d - 1")
        num = ptrim(self.num, self.q)
        exps = list(exps)
        for i in range(k):
            if exps[i] < 0:
                num = pmul(num, ppow(linear(i, self.q), -exps[i], self.q), self.q)
                exps[i] = 0
            while exps[i] > 0 and num and peval(num, -i, self.q) == 0:
                num = pdiv_linear(num, i, self.q)
                exps[i] -= 1
        if not num:
            exps = [0] * k
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exps", tuple(exps))
        object.__setattr__(self, "shift", shift)

    @classmethod
    def identity(cls, d, q):
        check_lambda_params(d, q)
        return cls(d, q)

    @classmethod
    def ring(cls, d, q, num, exps=None):
        return cls(d, q, tuple(num), exps)

    @classmethod
    def translation(cls, d, q, shift):
        return cls(d, q, (), None, tuple(shift))

    def is_identity(self) -> bool:
        return not self.num and not any(self.shift)

    def key(self):
        return (self.num, self.exps, self.shift)

    def __mul__(self, other):
        return lambda_mul(self, other)

    def lamps(self) -> dict:
        """For d = 2: position -> lamp value, reading num / t^e as a Laurent polynomial."""
        if self.d != 2:
            raise ValueError("lamp configurations only exist for d = 2")
        e = self.exps[0]
        return {j - e: c for j, c in enumerate(self.num) if c}

    def __str__(self):
        return f"({self.num}/{self.exps}, {self.shift})"


def check_lambda_params(d, q):
    if d < 2:
        raise PreconditionError("d must be at least 2")
    if not is_prime(q):
        raise PreconditionError("only prime q is supported")
    if q < d - 1:
        raise PreconditionError("need q >= d - 1 so that t, t+1, ..., t+d-2 are distinct mod q")


def _ring_add(a: LambdaElement, b: LambdaElement):
    q = a.q
    e = tuple(max(x, y) for x, y in zip(a.exps, b.exps))
    na, nb = a.num, b.num
    for i in range(a.d - 1):
        na = pmul(na, ppow(linear(i, q), e[i] - a.exps[i], q), q)
        nb = pmul(nb, ppow(linear(i, q), e[i] - b.exps[i], q), q)
    return padd(na, nb, q), e


def _twist(r: LambdaElement, s) -> LambdaElement:
    """chi(s) * r as a pure ring element."""
    return LambdaElement(r.d, r.q, r.num, tuple(e - x for e, x in zip(r.exps, s)))


def lambda_mul(a: LambdaElement, b: LambdaElement) -> LambdaElement:
    if (a.d, a.q) != (b.d, b.q):
        raise PreconditionError("incompatible Lambda_d(q) elements")
    tb = _twist(LambdaElement(b.d, b.q, b.num, b.exps), a.shift)
    num, e = _ring_add(LambdaElement(a.d, a.q, a.num, a.exps), tb)
    return LambdaElement(a.d, a.q, num, e, tuple(x + y for x, y in zip(a.shift, b.shift)))


def lambda_inv(a: LambdaElement) -> LambdaElement:
    neg = tuple(-x for x in a.shift)
    r = _twist(LambdaElement(a.d, a.q, pneg(a.num, a.q), a.exps), neg)
    return LambdaElement(a.d, a.q, r.num, r.exps, neg)


def standard_generators(d, q) -> list[LambdaElement]:
    """The constant 1 and the unit shifts e_i."""
    check_lambda_params(d, q)
    gens = [LambdaElement.ring(d, q, (1,))]
    for i in range(d - 1):
        s = [0] * (d - 1)
        s[i] = 1
        gens.append(LambdaElement.translation(d, q, s))
    return gens


def switch_walk_generators(q) -> list[LambdaElement]:
    """(c, 1) and (c, -1) for c in F_q: set the lamp at the current place, then move.

    Each of these moves the base vertex of DL_2(q) to a neighbour, and
    together they reach all 2q neighbours.
    """
    check_lambda_params(2, q)
    return [LambdaElement(2, q, (c,), None, (e,)) for e in (1, -1) for c in range(q)]


def random_lambda(rng: random.Random, d, q, degree=3, max_exp=2, max_shift=3) -> LambdaElement:
    num = tuple(rng.randrange(q) for _ in range(rng.randint(0, degree + 1)))
    exps = tuple(rng.randint(0, max_exp) for _ in range(d - 1))
    shift = tuple(rng.randint(-max_shift, max_shift) for _ in range(d - 1))
    return LambdaElement(d, q, num, exps, shift)


# -- embedding into the affine group of K^d, K = F_q((s)) -------------------


def _series_at_finite(a_num, exps, ell, q, N):
    """num(t) / prod (t+i)^e_i expanded in s = t + ell."""
    num_s = psubst_shift(a_num, -ell, q)
    val = LaurentApprox.from_coeffs(q, 0, num_s) if num_s else LaurentApprox.zero(q)
    for i, e in enumerate(exps):
        if e == 0:
            continue
        factor = LaurentApprox.from_coeffs(q, 0, linear(i - ell, q))
        val = val * factor.inverse(N) ** e if i != ell else val * factor.inverse() ** e
    return val


def _series_at_infinity(a_num, exps, q, N):
    """num(t) / prod (t+i)^e_i expanded in u = 1/t."""
    if not a_num:
        return LaurentApprox.zero(q)
    deg = len(a_num) - 1
    val = LaurentApprox.from_coeffs(q, -deg, tuple(reversed(a_num)))
    val = val * LaurentApprox.from_coeffs(q, sum(exps), (1,))
    for i, e in enumerate(exps):
        if e and i % q:
            val = val * LaurentApprox.from_coeffs(q, 0, (1, i)).inverse(N) ** e
    return val


def _chi_at_finite(shift, ell, q, N):
    val = LaurentApprox.from_int(1, q)
    for i, s in enumerate(shift):
        if s == 0:
            continue
        factor = LaurentApprox.from_coeffs(q, 0, linear(i - ell, q))
        if s > 0:
            val = val * factor**s
        else:
            inv = factor.inverse() if i == ell else factor.inverse(N)
            val = val * inv ** (-s)
    return val


def _chi_at_infinity(shift, q, N):
    val = LaurentApprox.from_coeffs(q, -sum(shift), (1,))
    for i, s in enumerate(shift):
        if s == 0 or i % q == 0:
            continue
        factor = LaurentApprox.from_coeffs(q, 0, (1, i))
        val = val * (factor**s if s > 0 else factor.inverse(N) ** (-s))
    return val


def lambda_embed(a: LambdaElement, N: int = DEFAULT_PRECISION) -> AffineMap:
    """x -> chi(s) x + r, read in F_q((t+ell)) for ell < d-1 and in F_q((1/t)) last."""
    if N < 1:
        raise PreconditionError("precision must be positive")
    k = a.d - 1
    scales, shifts = [], []
    for ell in range(k):
        scales.append(_chi_at_finite(a.shift, ell, a.q, N))
        shifts.append(_series_at_finite(a.num, a.exps, ell, a.q, N))
    scales.append(_chi_at_infinity(a.shift, a.q, N))
    shifts.append(_series_at_infinity(a.num, a.exps, a.q, N))
    return AffineMap("laurent", a.q, tuple(scales), tuple(shifts))
