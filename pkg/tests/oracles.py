"""Independent reference computations shared by the test modules."""
import random
from fractions import Fraction
from collections import defaultdict
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from lattcert.dl.tree import DLVertex, ball_distances, dl_ball, tree_parent
from lattcert.exact.padic import vp
from lattcert.matrix.qmatrix import QMatrix


def random_sl2_zp(rng: random.Random, p: int) -> QMatrix:
    """Random M in SL(2, Z[1/p]) with entries k / p^e, |k| <= 6, e in {0, 1}."""
    while True:
        a, b, c = (Fraction(rng.randint(-6, 6), p ** rng.randint(0, 1)) for _ in range(3))
        if a == 0:
            continue
        d = (1 + b * c) / a
        if d.denominator in (1, p):
            return QMatrix(((a, b), (c, d)))


def orbit_bounded(M: QMatrix, p: int, J: int = 40, c: int = 1) -> bool:
    """All entries of M^j, |j| <= J, have p-adic valuation >= -c."""
    for A in (M, M.inverse()):
        P = QMatrix.identity(2)
        for _ in range(J):
            P = P * A
            if any(x != 0 and vp(x, p) < -c for row in P.rows for x in row):
                return False
    return True


def module_contains_inverse_n(M: QMatrix, n: int, J: int) -> bool:
    """Is Z^2 / n inside the Z-span of M^j e_k, |j| <= J?

    Uses sympy's Hermite normal form of the scaled generator matrix.
    """
    cols = [(M**j).column(k) for j in range(-J, J + 1) for k in range(2)]
    D = n
    for v in cols:
        for x in v:
            D = D * x.denominator // gcd(D, x.denominator)
    H = hermite_normal_form(Matrix([[int(x * D) for x in v] for v in cols]).T)
    if H.shape != (2, 2):
        return False
    sol = H.inv() * Matrix([[D // n, 0], [0, D // n]])
    return all(x.is_integer for x in sol)


def brute_roots(coeffs, m):
    return [x for x in range(m) if sum(c * x**i for i, c in enumerate(coeffs)) % m == 0]


def lamplighter_ball_oracle(q, r):
    """Ball sizes of Z/q wr Z for the generators {lamp at 0, shift}.

    An element with lamp values c_x and cursor m has word length
    sum_x min(c_x, q - c_x) + 2(hi - lo) - |m|, where [lo, hi] is the hull of
    the lit lamps together with 0 and m. Sizes are counted from this formula.
    """
    weights = {}
    for c in range(1, q):
        w = min(c, q - c)
        weights[w] = weights.get(w, 0) + 1

    def lamp_counts(n, budget):
        # number of assignments of n lamps (0 allowed) by total cost, up to budget
        poly = [1] + [0] * budget
        for _ in range(n):
            new = [0] * (budget + 1)
            for k, v in enumerate(poly):
                if v:
                    new[k] += v
                    for w, mult in weights.items():
                        if k + w <= budget:
                            new[k + w] += v * mult
            poly = new
        return poly

    sizes = []
    for R in range(r + 1):
        total = 0
        for m in range(-R, R + 1):
            for lo in range(-R, min(0, m) + 1):
                for hi in range(max(0, m), R + 1):
                    nav = 2 * (hi - lo) - abs(m)
                    if nav > R:
                        continue
                    budget = R - nav
                    forced = [x for x in {lo, hi} if x < min(0, m) or x > max(0, m)]
                    free = hi - lo + 1 - len(forced)
                    # forced endpoints carry a lit lamp of some weight
                    fpoly = [1] + [0] * budget
                    for _ in forced:
                        new = [0] * (budget + 1)
                        for k, v in enumerate(fpoly):
                            for w, mult in weights.items():
                                if k + w <= budget:
                                    new[k + w] += v * mult
                        fpoly = new
                    rest = lamp_counts(free, budget)
                    total += sum(fpoly[a] * rest[b] for a in range(budget + 1)
                                 for b in range(budget + 1 - a))
        sizes.append(total)
    return sizes


def tree_adjacent(a, b):
    return tree_parent(a) == b or tree_parent(b) == a


def brute_force_degrees(branchings, radius=4):
    """Degrees of the radius-(radius-1) interior, from the adjacency definition.

    Two vertices are adjacent when they agree in all but two coordinates and
    differ by a tree edge in each of those two.
    """
    verts, _ = dl_ball(DLVertex.base(branchings), radius)
    d = len(branchings)
    buckets = defaultdict(list)
    for u in verts:
        for i in range(d):
            for j in range(i + 1, d):
                rest = tuple(c for k, c in enumerate(u.coords) if k not in (i, j))
                buckets[(i, j, rest)].append(u)
    inner = ball_distances(DLVertex.base(branchings), radius - 1)
    degrees = {}
    for v in inner:
        if inner[v] > radius - 1:
            continue
        count = 0
        for i in range(d):
            for j in range(i + 1, d):
                rest = tuple(c for k, c in enumerate(v.coords) if k not in (i, j))
                for u in buckets[(i, j, rest)]:
                    if tree_adjacent(u.coords[i], v.coords[i]) and tree_adjacent(u.coords[j], v.coords[j]):
                        count += 1
        degrees[v] = count
    return degrees


def dl_adjacent(u, v) -> bool:
    """Adjacency read off the definition: exactly two coordinates differ, each by a tree edge."""
    diff = [i for i, (a, b) in enumerate(zip(u.coords, v.coords)) if a != b]
    return len(diff) == 2 and all(tree_adjacent(u.coords[i], v.coords[i]) for i in diff)
