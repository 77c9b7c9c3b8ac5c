"""Z[1/n]^2 x|_M Z as a lattice in Isom(R^2) x Isom(DL_2(n)), and its lamplighter partner."""
from __future__ import annotations

from fractions import Fraction

from lattcert.constructions.certificate import Certificate, register
from lattcert.dl.lamplighter import lambda_embed, switch_walk_generators
from lattcert.dl.orbit import coverage_constant, orbit_bfs
from lattcert.dl.tree import DLVertex
from lattcert.errors import PreconditionError
from lattcert.exact.padic import is_prime, padic_abs, prime_factors, vp
from lattcert.exact.poly import RatPoly
from lattcert.matrix.qmatrix import QMatrix, companion
from lattcert.matrix.sl2 import (
    DEFAULT_SEARCH, generated_module, has_finite_order, is_qp_bounded_sl2, is_r_bounded_sl2,
    verify_module_witness,
)
from lattcert.matrix.units import qp_eigenvalues

TAG = "sl2-lattice"
PAIR_TAG = "lamplighter-pair"
ORBIT_RADIUS = 3


def _M(rows):
    return QMatrix.from_json(rows)


def trace_denominator(M: QMatrix) -> int:
    return M.trace().denominator


@register("det_one")
def _det_one(matrix):
    d = _M(matrix).det()
    return d == 1, {"det": str(d)}


@register("infinite_order")
def _infinite_order(matrix):
    M = _M(matrix)
    finite = has_finite_order(M)
    return not finite, {"trace": str(M.trace()), "twelfth_power_is_identity": finite}


@register("r_bounded")
def _r_bounded(matrix):
    M = _M(matrix)
    return is_r_bounded_sl2(M), {"trace": str(M.trace())}


@register("trace_denominator")
def _trace_denominator(matrix):
    t = _M(matrix).trace()
    return t.denominator >= 2, {"m": t.numerator, "n": t.denominator}


@register("unbounded_primes")
def _unbounded_primes(matrix):
    """Primes where M is not Q_p-bounded, among all primes dividing a denominator of M."""
    M = _M(matrix)
    n = trace_denominator(M)
    candidates = sorted(M.denominator_primes() | set(prime_factors(n)))
    unbounded = [p for p in candidates if not is_qp_bounded_sl2(M, p)]
    return unbounded == prime_factors(n), {
        "primes_of_n": prime_factors(n), "unbounded": unbounded, "candidates": candidates,
    }


@register("generated_module")
def _generated_module(matrix, n, J):
    M = _M(matrix)
    cert = generated_module(M, n, J)
    ok = cert.status == "Proved" and all(
        verify_module_witness(M, n, i, w) for i, w in cert.witnesses.items()
    )
    return ok, cert.to_json()


@register("eigenvalue_valuations")
def _eigenvalue_valuations(matrix, primes, N):
    """At each p | n the eigenvalues have valuations -v_p(n) and +v_p(n)."""
    M = _M(matrix)
    n = trace_denominator(M)
    out, ok = {}, True
    for p in primes:
        vals = sorted(a.valuation() for a in qp_eigenvalues(M, p, N))
        k = vp(n, p)
        out[str(p)] = {"valuations": vals, "abs_of_expanding": str(padic_abs(Fraction(1, p**k), p))}
        ok &= vals == [-k, k]
    return ok, out


@register("eigenlattice_index")
def _eigenlattice_index(matrix, primes, N):
    """prod_p p^v_p(lambda_+) equals n: M shrinks the eigen-lattice by index n."""
    M = _M(matrix)
    n = trace_denominator(M)
    index = 1
    for p in primes:
        index *= p ** max(a.valuation() for a in qp_eigenvalues(M, p, N))
    return index == n, {"index": index, "n": n}


def sl2_lattice_certificate(M: QMatrix, J: int = DEFAULT_SEARCH, N: int = 10):
    """Check every finitely verifiable hypothesis for Z[1/n]^2 x|_M Z to be a lattice."""
    rows = M.to_json()
    cert = Certificate(TAG, {"matrix": rows, "search_bound": J, "precision": N})
    if M.dim != 2:
        cert.add_failure("2x2 matrix", "M is a 2 x 2 rational matrix", f"got dimension {M.dim}")
        return cert
    n = trace_denominator(M)
    primes = prime_factors(n)
    cert.add("determinant one", "det M = 1", "det_one", {"matrix": rows})
    cert.add("infinite order", "M has infinite order (M^12 != I)", "infinite_order", {"matrix": rows})
    cert.add("R-bounded", "|tr M| < 2, so M generates a bounded subgroup of SL(2,R)",
             "r_bounded", {"matrix": rows})
    cert.add("trace denominator", "tr M = m/n in lowest terms with n >= 2",
             "trace_denominator", {"matrix": rows})
    cert.add("unbounded primes", "M is not Q_p-bounded exactly for the primes p dividing n",
             "unbounded_primes", {"matrix": rows})
    cert.add("module", "the Z[M, M^-1]-module generated by Z^2 is Z[1/n]^2",
             "generated_module", {"matrix": rows, "n": n, "J": J})
    cert.add("eigenvalue valuations", "for p | n the eigenvalues of M in Q_p have |.|_p = p^(+-v_p(n))",
             "eigenvalue_valuations", {"matrix": rows, "primes": primes, "N": N})
    cert.add("eigen-lattice index", "M maps the contracted eigen-lattice onto a subgroup of index n",
             "eigenlattice_index", {"matrix": rows, "primes": primes, "N": N})
    cert.group = {
        "kind": "SolvableFiniteRank",
        "description": ("Z^2" if n == 1 else f"Z[1/{n}]^2") + " x|_M Z",
        "matrices": [rows],
        "primes": primes,
    }
    cert.envelope = {
        "factors": [{"type": "IsomR2"}, {"type": "IsomDL", "branchings": [n, n]}],
        "claim": "embeds as an irreducible cocompact lattice",
    }
    cert.notes.append("irreducibility (non-discrete projections to both factors) is not machine-checked")
    return cert


@register("lamplighter_orbit")
def _lamplighter_orbit(q, radius, N):
    """Orbit of the base vertex of DL_2(q) under word balls equals the graph balls."""
    gens = [lambda_embed(g, N) for g in switch_walk_generators(q)]
    orbit = orbit_bfs(gens, DLVertex.base((q, q)), radius)
    C, contained = coverage_constant(orbit)
    return C == 0 and contained, {"coverage_constant": C, "orbit_in_ball": contained,
                                  "sphere_sizes": orbit.sphere_sizes()}


def lamplighter_pair(n: int, J: int = DEFAULT_SEARCH, N: int = 10, radius: int = ORBIT_RADIUS):
    """Z[1/n]^2 x| Z next to Z^2 x (Z/n wr Z): both sit in Isom(R^2) x Isom(DL_2(n))."""
    if n < 2:
        raise PreconditionError("n must be at least 2")
    f = RatPoly([1, Fraction(-1, n), 1])
    M = companion(f)
    cert = sl2_lattice_certificate(M, J, N)
    cert.tag = PAIR_TAG
    cert.inputs = {"n": n, "matrix": M.to_json(), "search_bound": J, "precision": N, "orbit_radius": radius}
    gamma = cert.group
    cert.group = {
        "gamma": gamma,
        "lambda": {"kind": "Product", "description": f"Z^2 x (Z/{n} wr Z)", "free_rank": 2, "lamp_order": n},
    }
    cert.notes.append(f"any finite group F of order {n} gives the same envelope for Z^2 x (F wr Z)")
    if is_prime(n):
        cert.add("lamplighter action", "Z/q wr Z acts vertex-transitively on DL_2(q) through F_q((t)) x F_q((1/t))",
                 "lamplighter_orbit", {"q": n, "radius": radius, "N": 12})
    else:
        cert.notes.append("lamplighter cross-check skipped: n is composite, only hypotheses are checked")
    return cert
