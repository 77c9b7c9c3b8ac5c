"""Boundedness criteria in SL(2) and the Z[M, M^-1]-module generated by Z^2."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from lattcert.errors import EntriesOutsideRing, NotSL2
from lattcert.exact.padic import padic_abs, prime_factors
from lattcert.matrix.qmatrix import QMatrix

DEFAULT_SEARCH = 10
MAX_SEARCH = 20


def _require_sl2(M: QMatrix):
    if M.dim != 2 or M.det() != 1:
        raise NotSL2(f"{M} is not in SL(2, Q)")


def is_r_bounded_sl2(M: QMatrix) -> bool:
    """|tr M| < 2, with +-I (trace +-2) counted as bounded."""
    _require_sl2(M)
    if M.is_scalar(1) or M.is_scalar(-1):
        return True
    return abs(M.trace()) < 2


def is_qp_bounded_sl2(M: QMatrix, p: int) -> bool:
    _require_sl2(M)
    return padic_abs(M.trace(), p) <= 1


def has_finite_order(M: QMatrix) -> bool:
    # finite-order elements of SL(2, Q) have order 1, 2, 3, 4 or 6
    _require_sl2(M)
    return M**12 == QMatrix.identity(2)


@dataclass
class ModuleCertificate:
    n: int
    target: str
    status: str  # "Proved" | "Inconclusive"
    search_bound: int
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "target": self.target,
            "status": self.status,
            "search_bound": self.search_bound,
            "witnesses": {str(i): [list(w) for w in ws] for i, ws in self.witnesses.items()},
        }


def verify_module_witness(M: QMatrix, n: int, i: int, terms) -> bool:
    """Does sum c * M^j e_k over `terms` = (j, k, c) equal e_i / n exactly?"""
    total = [Fraction(0), Fraction(0)]
    for j, k, c in terms:
        col = (M**j).column(k)
        total = [t + c * x for t, x in zip(total, col)]
    target = [Fraction(int(r == i), n) for r in range(2)]
    return total == target


def _ring_check(M: QMatrix, n: int):
    allowed = set(prime_factors(n))
    for A in (M, M.inverse()):
        extra = A.denominator_primes() - allowed
        if extra:
            raise EntriesOutsideRing(f"entries of {A} need primes {sorted(extra)} outside Z[1/{n}]")


def _solve_integer(cols, target):
    """Integer x with sum x_l cols[l] = target, or None.

    Column-style Hermite reduction of the 2 x m integer matrix, tracking each
    reduced column as a combination of the originals.
    """
    m = len(cols)
    cols = [list(c) for c in cols]
    combo = [{l: 1} for l in range(m)]

    def axpy(dst, src, c):
        # column dst += c * column src
        cols[dst] = [a + c * b for a, b in zip(cols[dst], cols[src])]
        for l, v in combo[src].items():
            combo[dst][l] = combo[dst].get(l, 0) + c * v
            if combo[dst][l] == 0:
                del combo[dst][l]

    pivots = []
    start = 0
    for row in range(2):
        # Euclid across columns start.. on this row
        while True:
            nz = [l for l in range(start, m) if cols[l][row] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda l: abs(cols[l][row]))
            for l in nz:
                if l != piv:
                    axpy(l, piv, -(cols[l][row] // cols[piv][row]))
        nz = [l for l in range(start, m) if cols[l][row] != 0]
        if not nz:
            continue
        l = nz[0]
        cols[start], cols[l] = cols[l], cols[start]
        combo[start], combo[l] = combo[l], combo[start]
        pivots.append((row, start))
        start += 1
    residual = list(target)
    x = {}
    for row, col in pivots:
        a = cols[col][row]
        if residual[row] % a:
            return None
        c = residual[row] // a
        residual = [r - c * v for r, v in zip(residual, cols[col])]
        for l, v in combo[col].items():
            x[l] = x.get(l, 0) + c * v
    if any(residual):
        return None
    return {l: v for l, v in x.items() if v}


def generated_module(M: QMatrix, n: int, J: int = DEFAULT_SEARCH) -> ModuleCertificate:
    """Try to certify that Z[M, M^-1] Z^2 = Z[1/n]^2.

    Entries of M and M^-1 in Z[1/n] give the inclusion into Z[1/n]^2. The
    reverse inclusion follows once e_1/n and e_2/n are integer combinations
    of the vectors M^j e_k, |j| <= J: then (1/n)Z^2 lies in the module, hence
    so does (1/n) times the module, and iterating gives all of Z[1/n]^2.
    """
    _require_sl2(M)
    if n < 1:
        raise ValueError("n must be positive")
    J = min(J, MAX_SEARCH)
    _ring_check(M, n)
    if n == 1:
        return ModuleCertificate(1, "Z^2", "Proved", 0)
    target = f"Z[1/{n}]^2"
    for bound in range(1, J + 1):
        index = [(j, k) for j in range(-bound, bound + 1) for k in range(2)]
        vecs = [(M**j).column(k) for j, k in index]
        D = lcm(n, *(x.denominator for v in vecs for x in v))
        cols = [[int(x * D) for x in v] for v in vecs]
        witnesses = {}
        for i in range(2):
            rhs = [D // n if r == i else 0 for r in range(2)]
            sol = _solve_integer(cols, rhs)
            if sol is None:
                break
            witnesses[i] = sorted((index[l][0], index[l][1], c) for l, c in sol.items())
        else:
            cert = ModuleCertificate(n, target, "Proved", bound, witnesses)
            assert all(verify_module_witness(M, n, i, w) for i, w in witnesses.items())
            return cert
    return ModuleCertificate(n, target, "Inconclusive", J)
