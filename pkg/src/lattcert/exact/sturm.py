"""Real root isolation with Sturm sequences, all in exact arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from lattcert.errors import NotSquarefree, PreconditionError
from lattcert.exact.poly import RatPoly


@dataclass(frozen=True)
class IsolatingInterval:
    low: Fraction
    high: Fraction

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def refine(self, f: RatPoly, width) -> "IsolatingInterval":
        """Bisect until narrower than `width`; f must change sign across the interval."""
        lo, hi = self.low, self.high
        flo = _sign(f(lo))
        if flo == 0 or flo == _sign(f(hi)):
            raise PreconditionError("interval endpoints do not bracket a simple root")
        width = Fraction(width)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s = _sign(f(mid))
            if s == 0:
                eps = (hi - lo) / 4
                while 2 * eps >= width:
                    eps /= 2
                return IsolatingInterval(mid - eps, mid + eps)
            if s == flo:
                lo = mid
            else:
                hi = mid
        return IsolatingInterval(lo, hi)

    def __str__(self):
        return f"({self.low}, {self.high})"


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_sequence(f: RatPoly) -> list[RatPoly]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def sign_variations(seq, x) -> int:
    signs = [s for s in (_sign(g(x)) for g in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(f: RatPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    lead = abs(f.lead)
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def sturm_real_roots(f: RatPoly, width=None):
    """(count, intervals) for the distinct real roots of a squarefree f.

    Intervals are disjoint, sorted, with rational endpoints at which f does
    not vanish; with `width` they are refined below that width.
    """
    if f.degree < 1:
        return 0, []
    if not f.is_squarefree():
        raise NotSquarefree(f"{f} is not squarefree")
    seq = sturm_sequence(f)
    bound = root_bound(f)
    total = sign_variations(seq, -bound) - sign_variations(seq, bound)
    out = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(lo, hi))
            continue
        mid = _split_point(f, lo, hi)
        vmid = sign_variations(seq, mid)
        stack.append((lo, mid, sign_variations(seq, lo) - vmid))
        stack.append((mid, hi, vmid - sign_variations(seq, hi)))
    out.sort(key=lambda iv: iv.low)
    if width is not None:
        out = [iv.refine(f, width) for iv in out]
    for iv in out:
        # independent evaluation cross-check
        assert _sign(f(iv.low)) * _sign(f(iv.high)) < 0, iv
    assert len(out) == total
    return total, out


def _split_point(f, lo, hi):
    mid = (lo + hi) / 2
    k = 3
    while f(mid) == 0:
        mid = lo + (hi - lo) / k
        k += 1
    return mid
