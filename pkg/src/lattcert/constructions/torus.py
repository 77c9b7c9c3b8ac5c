"""Z[1/pi]^d x| Z^r from a matrix in SL(d,Z) with split centralizer units."""
from __future__ import annotations

from lattcert.constructions.certificate import Certificate, register
from lattcert.errors import IntervalTooWide, RankUnresolved
from lattcert.exact.padic import DEFAULT_PRECISION, prime_factors
from lattcert.exact.roots import Splitting, splits_over_qp
from lattcert.exact.sturm import sturm_real_roots
from lattcert.matrix.qmatrix import QMatrix, char_poly
from lattcert.matrix.units import CentralizerElement, check_irreducible, multiplicative_rank

TAG = "torus-lattice"


def _M(rows):
    return QMatrix.from_json(rows)


def _units(matrix, candidates):
    M = _M(matrix)
    return [CentralizerElement(M, c["coeffs"], c.get("denom", 1), c.get("name", "")) for c in candidates]


@register("integral_sl")
def _integral_sl(matrix):
    M = _M(matrix)
    return M.is_integral() and M.det() == 1, {"integral": M.is_integral(), "det": str(M.det())}


@register("irreducible")
def _irreducible(matrix, assume=False):
    f = char_poly(_M(matrix))
    how = check_irreducible(f, assume)
    return True, {"poly": str(f), "method": "no rational root" if how == "proved" else "asserted by caller"}


@register("real_roots")
def _real_roots(matrix):
    f = char_poly(_M(matrix))
    count, intervals = sturm_real_roots(f)
    return count == f.degree, {"count": count, "intervals": [str(I) for I in intervals]}


@register("primes_split")
def _primes_split(matrix, primes):
    f = char_poly(_M(matrix))
    status = {str(p): splits_over_qp(f, p).value for p in primes}
    return all(s == Splitting.SPLITS.value for s in status.values()), status


@register("units")
def _units_check(matrix, candidates, primes):
    out, ok = {}, True
    for g in _units(matrix, candidates):
        det = g.det()
        support = sorted(prime_factors(g.denom))
        good = abs(det) == 1 and set(support) <= set(primes)
        out[g.label()] = {"det": str(det), "denominator_primes": support, "ok": good}
        ok &= good
    return ok, out


@register("rank")
def _rank(matrix, candidates, primes, expected, N=DEFAULT_PRECISION):
    gens = _units(matrix, candidates)
    try:
        rank, cert = multiplicative_rank(gens, primes, N=N)
    except IntervalTooWide as exc:
        raise RankUnresolved(str(exc)) from exc
    return rank == expected, {"rank": rank, "expected": expected, "certificate": cert.to_json()}


def _ring_name(primes):
    if not primes:
        return "Z"
    if len(primes) == 1:
        return f"Z[1/{primes[0]}]"
    return "Z[1/(" + "*".join(map(str, primes)) + ")]"


def torus_lattice_certificate(M: QMatrix, primes, candidates, N: int = DEFAULT_PRECISION,
                              assume_irreducible: bool = False):
    """`candidates` are CentralizerElements of M (or their JSON forms)."""
    rows = M.to_json()
    primes = sorted(set(primes))
    cands = [c.to_json() if isinstance(c, CentralizerElement) else dict(c) for c in candidates]
    d, k = M.dim, len(primes)
    r = (k + 1) * (d - 1)
    cert = Certificate(TAG, {"matrix": rows, "primes": primes, "candidates": cands, "precision": N,
                             "assume_irreducible": assume_irreducible})
    cert.add("M in SL(d,Z)", "M is an integer matrix of determinant 1", "integral_sl", {"matrix": rows})
    cert.add("irreducible", "the characteristic polynomial f of M is irreducible over Q",
             "irreducible", {"matrix": rows, "assume": assume_irreducible})
    cert.add("real eigenvalues", "M has d distinct real eigenvalues", "real_roots", {"matrix": rows})
    cert.add("primes split", "f splits into distinct linear factors over Q_p for every chosen p",
             "primes_split", {"matrix": rows, "primes": primes})
    cert.add("units", "each candidate is a unit of C(M) with denominators supported on the chosen primes",
             "units", {"matrix": rows, "candidates": cands, "primes": primes})
    integral = [c for c in cands if c.get("denom", 1) == 1]
    cert.add("archimedean rank", "the integral units have rank d - 1",
             "rank", {"matrix": rows, "candidates": integral, "primes": [], "expected": d - 1, "N": N})
    cert.add("full rank", "all candidates together have rank (k + 1)(d - 1)",
             "rank", {"matrix": rows, "candidates": cands, "primes": primes, "expected": r, "N": N},
             soft=True)
    got = cert.item("full rank").witness.get("rank", 0)
    kind = "Polycyclic" if not primes else "SolvableFiniteRank"
    ring = _ring_name(primes)
    cert.group = {"kind": kind, "description": f"{ring}^{d} x| Z^{got}", "rank": got,
                  "expected_rank": r, "primes": primes, "matrix": rows, "units": cands}
    cert.envelope = {
        "factors": [{"type": "LieSolRd", "d": d}]
        + [{"type": "IsomDL", "branchings": [p] * d} for p in primes],
        "claim": "embeds as a cocompact irreducible lattice",
    }
    cert.notes.append("cocompactness of the adelic image is a cited fact, not computed")
    return cert
