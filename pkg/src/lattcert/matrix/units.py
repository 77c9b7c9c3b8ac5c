"""Units in the centralizer of M, their valuation vectors, and rank certificates."""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm

from mpmath import iv

from lattcert import kernels
from lattcert.errors import (
    DoesNotSplit, IntervalTooWide, NotIrreducible, NotSquarefree, PreconditionError, Ramified,
)
from lattcert.exact import linalg
from lattcert.exact.padic import (
    DEFAULT_PRECISION, PRECISION_GUARD, PadicApprox, is_prime, prime_factors, vp,
)
from lattcert.exact.poly import RatPoly, poly_discriminant
from lattcert.exact.roots import hensel_lift, primitive_part_at, roots_mod_p
from lattcert.exact.sturm import sturm_real_roots
from lattcert.matrix.qmatrix import QMatrix, char_poly, poly_of_matrix


@dataclass(frozen=True)
class CentralizerElement:
    """g = (a_0 I + a_1 M + ... + a_{d-1} M^{d-1}) / denom."""

    base: QMatrix
    coeffs: tuple
    denom: int = 1
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) > self.base.dim:
            raise ValueError("too many coefficients for the base matrix")
        if self.denom < 1:
            raise ValueError("denominator must be positive")

    @property
    def matrix(self) -> QMatrix:
        return poly_of_matrix(self.coeffs, self.base).scale(Fraction(1, self.denom))

    @property
    def poly(self) -> RatPoly:
        return RatPoly(self.coeffs) * Fraction(1, self.denom)

    def det(self) -> Fraction:
        return self.matrix.det()

    def is_unit(self) -> bool:
        return abs(self.det()) == 1

    def denominator_primes(self) -> set:
        return set(prime_factors(self.denom)) | self.matrix.denominator_primes()

    def label(self) -> str:
        return self.name or f"({'+'.join(f'{a}M^{i}' for i, a in enumerate(self.coeffs) if a)})/{self.denom}"

    def to_json(self) -> dict:
        return {"name": self.name, "coeffs": list(self.coeffs), "denom": self.denom}


def det_centralizer(g: CentralizerElement) -> Fraction:
    return g.det()


def check_irreducible(f: RatPoly, assume: bool = False) -> str:
    """'proved' for degree <= 3 with no rational root, 'assumed' above that."""
    if f.degree <= 1:
        return "proved"
    if f.degree <= 3:
        if any(f(r) == 0 for r in rational_root_candidates(f)):
            raise NotIrreducible(f"{f} has a rational root")
        return "proved"
    if not assume:
        raise PreconditionError("irreducibility of degree >= 4 must be asserted by the caller")
    return "assumed"


def rational_root_candidates(f: RatPoly):
    den = lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    if ints[0] == 0:
        yield Fraction(0)
        while ints and ints[0] == 0:
            ints.pop(0)
    a0, ad = abs(ints[0]), abs(ints[-1])
    divs = lambda n: [k for k in range(1, n + 1) if n % k == 0]
    for a in divs(a0):
        for b in divs(ad):
            yield Fraction(a, b)
            yield Fraction(-a, b)


# -- eigenvalues in Q_p ------------------------------------------------------


def _root_key(a: PadicApprox):
    return (a.valuation_offset, a.unit % a.prime)


def qp_eigenvalues(M: QMatrix, p: int, N: int = DEFAULT_PRECISION) -> list[PadicApprox]:
    """All eigenvalues of M in Q_p to N digits, ordered by (valuation, leading digit).

    p-integral characteristic polynomials use plain Hensel lifting from
    simple roots mod p. Otherwise each candidate valuation v is scanned:
    f(p^v u) is made primitive and its simple unit roots lifted.
    """
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    f = char_poly(M)
    if not f.is_squarefree():
        raise NotSquarefree(f"characteristic polynomial {f} has repeated roots")
    d = f.degree
    if all(c.denominator % p for c in f.coeffs):
        disc = poly_discriminant(f)
        if vp(disc, p) > 0:
            raise Ramified(f"{p} divides the discriminant {disc}")
        rs = roots_mod_p(f, p)
        if len(rs) != d:
            raise DoesNotSplit(f"{f} does not split over Q_{p}")
        roots = [hensel_lift(f, p, r, N) for r, _ in rs]
    else:
        roots = _scan_valuations(f, p, N)
        if len(roots) != d:
            raise DoesNotSplit(f"{f} does not split over Q_{p} (found {len(roots)} roots)")
    return sorted(roots, key=_root_key)


def _scan_valuations(f: RatPoly, p: int, N: int) -> list[PadicApprox]:
    bound = f.degree * max(abs(vp(c, p)) for c in f.coeffs if c) + 1
    out = []
    for v in range(-bound, bound + 1):
        scaled = f.compose(RatPoly([0, Fraction(p) ** v]))
        g = primitive_part_at(scaled, p)
        for r, mult in roots_mod_p(g, p):
            if r == 0:
                continue
            if mult > 1:
                raise Ramified(f"repeated unit root of f(p^{v} u) mod {p}")
            u = hensel_lift(g, p, r, N)
            out.append(PadicApprox(p, v + u.valuation_offset, u.unit, u.precision))
    return out


@dataclass(frozen=True)
class ValuationVector:
    prime: int
    entries: tuple
    order: tuple  # (valuation, leading digit) of each Hensel lift, in entry order

    def to_json(self) -> dict:
        return {"prime": self.prime, "entries": list(self.entries), "order": [list(o) for o in self.order]}


def valuation_vector(g: CentralizerElement, p: int, N: int = DEFAULT_PRECISION,
                     guard: int = PRECISION_GUARD) -> ValuationVector:
    """(v_p(lambda_i(g)))_i over the eigenvalues alpha_i of the base matrix."""
    roots = qp_eigenvalues(g.base, p, N)
    num = RatPoly(g.coeffs)
    entries = []
    for a in roots:
        lam = num(a)
        if not isinstance(lam, PadicApprox):
            lam = PadicApprox.from_rational(lam, p, N)
        try:
            v = lam.valuation(guard)
        except Exception as exc:
            raise type(exc)(f"{g.label()} at {p}: {exc}") from exc
        entries.append(v - vp(g.denom, p))
    det = g.det()
    if det != 0:
        assert sum(entries) == vp(det, p), (entries, det)
    return ValuationVector(p, tuple(entries), tuple(_root_key(a) for a in roots))


def common_ordering(vectors, targets):
    """A permutation sigma with vectors[k][sigma[i]] == targets[k][i] for all k, or None."""
    d = len(targets[0])
    for sigma in permutations(range(d)):
        if all(tuple(v[s] for s in sigma) == tuple(t) for v, t in zip(vectors, targets)):
            return sigma
    return None


# -- rank certification ------------------------------------------------------

_iv_lock = threading.RLock()


@contextmanager
def _iv_precision(bits):
    with _iv_lock:
        old = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = old


def _iv_frac(x):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _iv_hull(lo, hi):
    a, b = _iv_frac(lo), _iv_frac(hi)
    return iv.mpf([a.a, b.b])


def _excludes_zero(x) -> bool:
    return x.a > 0 or x.b < 0


def _magnitude(x):
    return min(abs(x.a), abs(x.b))


@dataclass
class RankCertificate:
    rank: int
    exact_rank: int
    upper_bound: int
    exact_pivots: list
    interval_pivots: list
    interval_width: str
    precision_bits: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _log_abs_rows(gens, intervals, bits):
    rows = []
    for g in gens:
        row = []
        for I in intervals:
            alpha = _iv_hull(I.low, I.high)
            lam = iv.mpf(0)
            for c in reversed(g.coeffs):
                lam = lam * alpha + c
            lam = lam / g.denom
            if not _excludes_zero(lam):
                raise IntervalTooWide(f"eigenvalue of {g.label()} not separated from 0")
            row.append(iv.log(abs(lam)))
        rows.append(row)
    return rows


def _interval_rank(rows):
    """Gaussian elimination choosing pivots whose interval excludes zero."""
    rows = [list(r) for r in rows]
    pivots = []
    live = list(range(len(rows)))
    ncols = len(rows[0]) if rows else 0
    used_cols = set()
    while live:
        best = None
        for i in live:
            for c in range(ncols):
                if c in used_cols:
                    continue
                x = rows[i][c]
                if _excludes_zero(x) and (best is None or _magnitude(x) > _magnitude(rows[best[0]][best[1]])):
                    best = (i, c)
        if best is None:
            break
        i, c = best
        pivots.append((i, c))
        used_cols.add(c)
        live.remove(i)
        for k in live:
            m = rows[k][c] / rows[i][c]
            rows[k] = [a - m * b for a, b in zip(rows[k], rows[i])]
    return pivots


def multiplicative_rank(gens, primes, width=Fraction(1, 2**40), N: int = DEFAULT_PRECISION,
                        max_refinements: int = 4):
    """Rank of the subgroup generated by commuting units, with a certificate.

    Each generator contributes the row [valuation vectors at `primes` | log|lambda_i|
    at each real eigenvalue]. The integer block is eliminated exactly; the
    rows it kills are then ranked with interval arithmetic. The result is
    accepted only when the certified pivots reach the a priori upper bound
    min(#generators, #primes * (d - 1) + a), where a is the rank of the
    log map at the real places (r - 1 when all r eigenvalues are real,
    r otherwise); otherwise the intervals are refined and, failing that,
    IntervalTooWide is raised.
    """
    gens = list(gens)
    if not gens:
        return 0, RankCertificate(0, 0, 0, [], [], str(width), 0)
    base = gens[0].base
    if any(g.base != base for g in gens):
        raise PreconditionError("generators must share the base matrix")
    for g in gens:
        if not g.is_unit():
            raise PreconditionError(f"{g.label()} is not a unit (det {g.det()})")
    d = base.dim
    f = char_poly(base)
    exact_rows = [[x for p in primes for x in valuation_vector(g, p, N).entries] for g in gens]
    nreal, _ = sturm_real_roots(f)
    arch_dim = nreal - 1 if nreal == d else nreal
    upper = min(len(gens), len(primes) * (d - 1) + arch_dim)

    # exact elimination on the valuation block, carrying rational multipliers
    combos = [{i: Fraction(1)} for i in range(len(gens))]
    rows = [list(map(Fraction, r)) for r in exact_rows]
    exact_pivots = []
    live = list(range(len(gens)))
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in live if rows[i][c] != 0), None)
        if piv is None:
            continue
        exact_pivots.append((piv, c))
        live.remove(piv)
        for k in live:
            if rows[k][c]:
                m = rows[k][c] / rows[piv][c]
                rows[k] = [a - m * b for a, b in zip(rows[k], rows[piv])]
                for j, v in combos[piv].items():
                    combos[k][j] = combos[k].get(j, 0) - m * v
    exact_rank = len(exact_pivots)
    assert exact_rank == linalg.rank(exact_rows)[0]

    width = Fraction(width)
    bits = max(64, 2 * width.denominator.bit_length() + 32)
    pivots = []
    for _ in range(max_refinements + 1):
        _, intervals = sturm_real_roots(f, width)
        with _iv_precision(bits):
            logs = _log_abs_rows(gens, intervals, bits)
            residual = []
            for k in live:
                row = [iv.mpf(0)] * nreal
                for j, v in combos[k].items():
                    row = [a + _iv_frac(v) * b for a, b in zip(row, logs[j])]
                residual.append(row)
            pivots = _interval_rank(residual) if residual and nreal else []
        if exact_rank + len(pivots) >= upper:
            break
        width /= 2**32
        bits += 128
    else:
        raise IntervalTooWide(
            f"certified rank {exact_rank + len(pivots)} below upper bound {upper}; refine further"
        )
    rank = exact_rank + len(pivots)
    cert = RankCertificate(
        rank=rank,
        exact_rank=exact_rank,
        upper_bound=upper,
        exact_pivots=[[gens[i].label(), c] for i, c in exact_pivots],
        interval_pivots=[[gens[live[i]].label(), c] for i, c in pivots],
        interval_width=str(width),
        precision_bits=bits,
    )
    return rank, cert


def unit_search(M: QMatrix, p: int, k: int, B: int, assume_irreducible: bool = False):
    """All (sum a_i M^i) / p^k with |a_i| <= B and determinant 1.

    For even dimension g and -g are both units; only the one whose first
    nonzero coefficient is positive is kept.
    """
    d = M.dim
    check_irreducible(char_poly(M), assume_irreducible)
    powers = [M**i for i in range(d)]
    D = lcm(*(P.denominator() for P in powers))
    mats = [[int(x * D) for r in P.rows for x in r] for P in powers]
    target = D**d * p ** (k * d)
    found = kernels.det_box_search(mats, d, B, target)
    out = []
    seen = set()
    for a in found:
        key = a
        if d % 2 == 0:
            lead = next(x for x in a if x)
            key = a if lead > 0 else tuple(-x for x in a)
        if key in seen:
            continue
        seen.add(key)
        out.append(CentralizerElement(M, key, p**k))
    return out
