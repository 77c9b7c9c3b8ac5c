"""Exact normal forms for the groups compared by growth, and BFS ball counts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from lattcert.dl.lamplighter import LambdaElement, lambda_inv, lambda_mul, standard_generators
from lattcert.dl.tree import DEFAULT_VERTEX_CAP
from lattcert.errors import MemoryBudgetExceeded, PreconditionError
from lattcert.fileio import atomic_write, csv_text
from lattcert.matrix.qmatrix import QMatrix

KINDS = ("Trivial", "SolvableFiniteRank", "Polycyclic", "Product", "Lambda")


@dataclass
class GroupDescriptor:
    """kind plus parameters:

    SolvableFiniteRank / Polycyclic: ``matrices`` (commuting, JSON rows); elements (v, k)
        with (v, k)(v', k') = (v + A^k v', k + k'), generated by the basis vectors and matrices.
        v is stored as (integer numerators, common denominator) in lowest terms.
    Product: ``free_rank`` a and ``lamp_order`` n; Z^a x (Z/n wr Z), elements
        (z, lamps, shift), generated by unit vectors, the lamp at 0 and the shift.
    Lambda: ``d`` and ``q``; Lambda_d(q) with its standard generators.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown group kind {self.kind!r}")
        if self.kind in ("SolvableFiniteRank", "Polycyclic"):
            self._mats = [QMatrix.from_json(m) for m in self.params["matrices"]]
            self._dim = self._mats[0].dim
            self._powers = {}
        if self.kind == "Lambda":
            self._d, self._q = int(self.params["d"]), int(self.params["q"])

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params}

    # group structure

    def identity(self):
        k = self.kind
        if k == "Trivial":
            return ()
        if k in ("SolvableFiniteRank", "Polycyclic"):
            return (((0,) * self._dim, 1), (0,) * len(self._mats))
        if k == "Product":
            return ((0,) * int(self.params["free_rank"]), (), 0)
        return LambdaElement.identity(self._d, self._q)

    def generators(self) -> list:
        k = self.kind
        if k == "Trivial":
            return []
        if k in ("SolvableFiniteRank", "Polycyclic"):
            d, r = self._dim, len(self._mats)
            vecs = [((tuple(int(i == j) for j in range(d)), 1), (0,) * r) for i in range(d)]
            mats = [(((0,) * d, 1), tuple(int(i == j) for j in range(r))) for i in range(r)]
            return vecs + mats
        if k == "Product":
            a = int(self.params["free_rank"])
            zs = [(tuple(int(i == j) for j in range(a)), (), 0) for i in range(a)]
            return zs + [((0,) * a, ((0, 1),), 0), ((0,) * a, (), 1)]
        return standard_generators(self._d, self._q)

    def _power(self, ks):
        """A^ks as (integer rows, denominator)."""
        P = self._powers.get(ks)
        if P is None:
            A = QMatrix.identity(self._dim)
            for M, e in zip(self._mats, ks):
                A = A * M**e
            D = A.denominator()
            P = (tuple(tuple(int(x * D) for x in row) for row in A.rows), D)
            self._powers[ks] = P
        return P

    def _apply(self, ks, vec):
        rows, D = self._power(ks)
        nums, den = vec
        return tuple(sum(a * x for a, x in zip(row, nums)) for row in rows), D * den

    def mul(self, x, y):
        k = self.kind
        if k == "Trivial":
            return ()
        if k in ("SolvableFiniteRank", "Polycyclic"):
            (v, a), (w, b) = x, y
            pw, pd = self._apply(a, w)
            vn, vd = v
            return (_reduce([s * pd + t * vd for s, t in zip(vn, pw)], vd * pd),
                    tuple(s + t for s, t in zip(a, b)))
        if k == "Product":
            n = int(self.params["lamp_order"])
            (z1, l1, s1), (z2, l2, s2) = x, y
            lamps = dict(l1)
            for pos, val in l2:
                lamps[pos + s1] = (lamps.get(pos + s1, 0) + val) % n
            return (tuple(a + b for a, b in zip(z1, z2)),
                    tuple(sorted((p, v) for p, v in lamps.items() if v)), s1 + s2)
        return lambda_mul(x, y)

    def inverse(self, x):
        k = self.kind
        if k == "Trivial":
            return ()
        if k in ("SolvableFiniteRank", "Polycyclic"):
            v, a = x
            neg = tuple(-e for e in a)
            pw, pd = self._apply(neg, v)
            return (_reduce([-t for t in pw], pd), neg)
        if k == "Product":
            n = int(self.params["lamp_order"])
            z, lamps, s = x
            return (tuple(-a for a in z), tuple(sorted((p - s, -v % n) for p, v in lamps)), -s)
        return lambda_inv(x)


def _reduce(nums, den):
    g = math.gcd(den, *nums)
    return tuple(x // g for x in nums), den // g


def vector_value(elem) -> tuple:
    """The rational translation part of a SolvableFiniteRank element."""
    nums, den = elem[0]
    return tuple(Fraction(x, den) for x in nums)


def growth(G: GroupDescriptor, r: int, cap: int = DEFAULT_VERTEX_CAP) -> list[int]:
    """Ball sizes |B(0)|, ..., |B(r)| in the word metric of the symmetric generating set."""
    gens = G.generators()
    gens = gens + [G.inverse(g) for g in gens]
    e = G.identity()
    seen = {e}
    frontier = [e]
    sizes = [1]
    for _ in range(r):
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise MemoryBudgetExceeded(f"ball exceeds {cap} elements")
        sizes.append(len(seen))
        frontier = nxt
    return sizes


def growth_flags(sizes: list[int]) -> dict:
    """Monotonicity and a superpolynomial flag.

    Polynomial growth of degree D has log-increments log(b_r / b_{r-1}) of
    order D / r, so the increment at r is about half the one at r/2. The
    flag is raised when the last increment keeps at least 3/4 of the
    increment at half the radius (r >= 8 only).
    """
    r = len(sizes) - 1
    monotone = all(b > a for a, b in zip(sizes, sizes[1:]))
    inc = [None] + [math.log(b / a) for a, b in zip(sizes, sizes[1:])]
    slopes = [None, None] + [
        (math.log(sizes[k]) - math.log(sizes[k - 1])) / (math.log(k) - math.log(k - 1)) for k in range(2, r + 1)
    ]
    superpoly = False
    if r >= 8 and monotone:
        half = (r + 1) // 2
        superpoly = inc[r] >= 0.75 * inc[half]
    return {
        "strictly_increasing": monotone,
        "superpolynomial": superpoly,
        "log_increments": [None if x is None else round(x, 6) for x in inc],
        "log_log_slopes": [None if x is None else round(x, 6) for x in slopes],
    }


def growth_compare(a: GroupDescriptor, b: GroupDescriptor, r: int, cap: int = DEFAULT_VERTEX_CAP):
    """Ball and sphere sizes of both groups up to radius r, with descriptive flags."""
    sa, sb = growth(a, r, cap), growth(b, r, cap)
    rows = []
    for name, sizes in (("a", sa), ("b", sb)):
        for k, s in enumerate(sizes):
            rows.append({"group": name, "radius": k, "ball_size": s,
                         "sphere_size": s - (sizes[k - 1] if k else 0)})
    report = {"a": {"group": a.to_json(), **growth_flags(sa)},
              "b": {"group": b.to_json(), **growth_flags(sb)}}
    return rows, report


GROWTH_COLUMNS = ["group", "radius", "ball_size", "sphere_size"]


def write_growth_csv(path, rows):
    atomic_write(path, csv_text(GROWTH_COLUMNS, [[r[c] for c in GROWTH_COLUMNS] for r in rows]))


def gamma_descriptor(n: int) -> GroupDescriptor:
    """Z[1/n]^2 x| Z through the companion matrix of t^2 - t/n + 1."""
    M = QMatrix(((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(1, n))))
    return GroupDescriptor("SolvableFiniteRank", {"matrices": [M.to_json()], "n": n})


def lamplighter_descriptor(n: int, free_rank: int = 0) -> GroupDescriptor:
    return GroupDescriptor("Product", {"free_rank": free_rank, "lamp_order": n})
