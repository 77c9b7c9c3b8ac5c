"""The cubic t^3 - 5t^2 + 6t - 1 and its rank-4 group of centralizer units at 13.

With M the companion matrix of f:
    M2 = -M + I,  M3 = (M^2 + 5M + 4I)/13,  M4 = (2M^2 + 3M + 4I)/13.
"""
from __future__ import annotations

from fractions import Fraction

from lattcert.constructions.certificate import Certificate, register
from lattcert.constructions.splitting import splitting_prime_set
from lattcert.exact.padic import DEFAULT_PRECISION
from lattcert.exact.poly import RatPoly, parse_poly
from lattcert.exact.sturm import sign_variations, sturm_real_roots, sturm_sequence, root_bound
from lattcert.matrix.qmatrix import char_poly, companion
from lattcert.matrix.units import (
    CentralizerElement, check_irreducible, common_ordering, multiplicative_rank, valuation_vector,
)

TAG = "example"
CUBIC = "t^3 - 5t^2 + 6t - 1"
PRIME = 13
FIRST_SPLITTING = [13, 29, 41]
PHI_M3 = (0, 1, -1)
PHI_M4 = (-1, -1, 2)
UNITS = {
    "M": ((0, 1, 0), 1),
    "M2": ((1, -1, 0), 1),
    "M3": ((4, 5, 1), 13),
    "M4": ((4, 3, 2), 13),
}


def example_units(f: RatPoly) -> dict:
    M = companion(f)
    return {name: CentralizerElement(M, c, m, name) for name, (c, m) in UNITS.items()}


@register("example_irreducible")
def _irreducible(poly):
    f = parse_poly(poly)
    check_irreducible(f)
    return True, {"poly": str(f), "method": "rational root test"}


@register("example_interlacing")
def _interlacing(poly):
    """Exactly one root in each of (0,1), (1,2), (2, B)."""
    f = parse_poly(poly)
    count, intervals = sturm_real_roots(f)
    seq = sturm_sequence(f)
    B = root_bound(f)
    cuts = [Fraction(0), Fraction(1), Fraction(2), B]
    per = [sign_variations(seq, a) - sign_variations(seq, b) for a, b in zip(cuts, cuts[1:])]
    ok = count == 3 and per == [1, 1, 1] and all(f(c) != 0 for c in cuts[:3])
    return ok, {"count": count, "roots_per_interval": per, "cuts": [str(c) for c in cuts],
                "intervals": [str(I) for I in intervals]}


@register("example_m2")
def _m2(poly):
    """M2 = I - M lies in SL(3,Z) with characteristic polynomial -f(1 - t), constant term -1."""
    f = parse_poly(poly)
    M2 = example_units(f)["M2"].matrix
    h = char_poly(M2)
    target = -f.compose(RatPoly([1, -1]))
    ok = M2.is_integral() and M2.det() == 1 and h == target and h.coeffs[0] == -1
    return ok, {"h": str(h), "det": str(M2.det()), "constant_term": str(h.coeffs[0])}


@register("example_rank")
def _rank(poly, names, primes, expected, N):
    units = example_units(parse_poly(poly))
    rank, cert = multiplicative_rank([units[n] for n in names], primes, N=N)
    return rank == expected, {"rank": rank, "certificate": cert.to_json()}


@register("example_splitting")
def _splitting(poly, expected):
    """The smallest splitting primes, in order."""
    report = splitting_prime_set(parse_poly(poly), max(expected))
    return report.primes == expected, {"primes": report.primes, "ramified": report.ramified}


@register("example_dets")
def _dets(poly):
    units = example_units(parse_poly(poly))
    dets = {n: str(units[n].det()) for n in ("M3", "M4")}
    return all(d == "1" for d in dets.values()), dets


@register("example_kernel")
def _kernel(poly, N):
    units = example_units(parse_poly(poly))
    vecs = {n: list(valuation_vector(units[n], PRIME, N).entries) for n in ("M", "M2")}
    return all(v == [0, 0, 0] for v in vecs.values()), vecs


@register("example_phi")
def _phi(poly, N):
    units = example_units(parse_poly(poly))
    v3 = valuation_vector(units["M3"], PRIME, N)
    v4 = valuation_vector(units["M4"], PRIME, N)
    sigma = common_ordering([v3.entries, v4.entries], [PHI_M3, PHI_M4])
    return sigma is not None, {
        "phi_M3": list(v3.entries), "phi_M4": list(v4.entries),
        "root_order": [list(o) for o in v3.order],
        "ordering": None if sigma is None else list(sigma),
    }


def worked_example(N: int = DEFAULT_PRECISION, poly: str = CUBIC) -> Certificate:
    f = parse_poly(poly)
    p = str(f)
    cert = Certificate(TAG, {"poly": p, "precision": N, "prime": PRIME})
    cert.add("irreducible", "f has no rational root, hence is irreducible over Q",
             "example_irreducible", {"poly": p})
    cert.add("root interlacing", "f has three real roots with 0 < a1 < 1 < a2 < 2 < a3",
             "example_interlacing", {"poly": p})
    cert.add("M2 in SL(3,Z)", "M2 = I - M has characteristic polynomial -f(1-t) with constant term -1",
             "example_m2", {"poly": p})
    cert.add("rank of <M, M2>", "M and M2 generate a free abelian group of rank 2",
             "example_rank", {"poly": p, "names": ["M", "M2"], "primes": [], "expected": 2, "N": N})
    cert.add("splitting primes", "the smallest primes at which f splits over Q_p are 13, 29, 41",
             "example_splitting", {"poly": p, "expected": FIRST_SPLITTING})
    cert.add("det M3 = det M4 = 1", "M3 and M4 have determinant 1, so lie in C(M) over Z[1/13]",
             "example_dets", {"poly": p})
    cert.add("phi kernel", "phi(M) = phi(M2) = (0, 0, 0) at p = 13",
             "example_kernel", {"poly": p, "N": N})
    cert.add("phi of M3, M4", "one ordering of the eigenvalues gives phi(M3) = (0,1,-1), phi(M4) = (-1,-1,2)",
             "example_phi", {"poly": p, "N": N})
    cert.add("total rank", "M, M2, M3, M4 generate a free abelian group of rank 4",
             "example_rank", {"poly": p, "names": ["M", "M2", "M3", "M4"], "primes": [PRIME],
                              "expected": 4, "N": N})
    cert.group = {"kind": "SolvableFiniteRank", "description": "Z[1/13]^3 x| Z^4",
                  "matrix": companion(f).to_json(), "units": {n: u.to_json() for n, u in example_units(f).items()}}
    cert.envelope = {"factors": [{"type": "LieSolRd", "d": 3}, {"type": "IsomDL", "branchings": [13, 13, 13]}],
                     "claim": "embeds as a cocompact lattice"}
    cert.notes.append("density 1/3 of the splitting primes is derived from disc(f) = 49 being a square")
    return cert
