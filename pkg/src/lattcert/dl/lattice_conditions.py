"""Truncated checks of the lattice conditions for K^d x| Diag_d(R) acting on DL_d(q).

L_i consists of translations whose i-th coordinate lies in R (the others
free in K), extended by Diag_d(R). t_i (i < d) is the diagonal element
with pi^-1 in coordinate i and pi in the last coordinate. Elements are
affine maps over K = F_q((s)) or Q_q with digits confined to the window
[-W, W).
"""
from __future__ import annotations

import random

from lattcert.dl.affine import AffineMap, compose, field_element, field_one, field_zero, random_unit
from lattcert.dl.tree import DEFAULT_WINDOW
from lattcert.errors import PreconditionError
from lattcert.exact.padic import is_prime


def _coord_in_R(x) -> bool:
    return x.is_zero() or x.valuation_offset >= 0


def in_L(g: AffineMap, i: int) -> bool:
    return all(s.valuation() == 0 for s in g.scales) and _coord_in_R(g.shifts[i])


def _t(field, q, d, i, power, W):
    """t_i^power as an affine map (zero shift)."""
    exps = [0] * d
    exps[i] -= power
    exps[-1] += power
    scales = tuple(field_element(field, q, {e: 1}, None if field == "laurent" else e + 4 * W)
                   for e in exps)
    return AffineMap(field, q, scales, (field_zero(field, q, 4 * W),) * d)


def _conj(a: AffineMap, g: AffineMap, a_inv: AffineMap) -> AffineMap:
    return compose(compose(a, g), a_inv)


def _translation(field, q, d, coords: dict, W):
    shifts = []
    for j in range(d):
        digits = coords.get(j, {})
        shifts.append(field_element(field, q, digits, W) if digits else field_zero(field, q, W))
    return AffineMap(field, q, (field_one(field, q, 4 * W),) * d, tuple(shifts))


def _random_H(rng, field, q, d, W):
    scales = tuple(random_unit(rng, field, q, 2 * W) for _ in range(d))
    shifts = tuple(field_element(field, q, {j: rng.randrange(q) for j in range(-W, W)}, W)
                   for _ in range(d))
    return AffineMap(field, q, scales, shifts)


def _pair(d, i):
    """The conjugating element and the lattice it expands: t_i for i < d-1, t_0^-1 for the last."""
    return (i, 1) if i < d - 1 else (0, -1)


def check_index(field, q, d, W=DEFAULT_WINDOW):
    """[t L_i t^-1 : L_i] by counting the classes mod L_i of t y t^-1, y in L_i.

    An index of 0 is reported when L_i is not contained in the conjugate.
    """
    out = {}
    for i in range(d):
        k, power = _pair(d, i)
        t = _t(field, q, d, k, power, W)
        t_inv = _t(field, q, d, k, -power, W)
        classes = set()
        for a in range(q):
            for b in range(q):
                y = _translation(field, q, d, {i: {0: a, 1: b}}, W)
                assert in_L(y, i)
                z = _conj(t, y, t_inv)
                h = z.shifts[i]
                classes.add(tuple(h.digit(j) for j in range(-W, 0)))
        # L_i sits inside the conjugate: t^-1 y t stays in L_i for y in L_i
        contained = all(
            in_L(_conj(t_inv, _translation(field, q, d, {i: {0: a}}, W), t), i) for a in range(q)
        )
        out[i] = len(classes) if contained else 0
    return out


def check_exhaustion(rng, field, q, d, W=DEFAULT_WINDOW, samples=50):
    """Each windowed element lies in t^n L_i t^-n for some n <= W; returns the largest n used."""
    worst = 0
    for i in range(d):
        k, power = _pair(d, i)
        elems = [_translation(field, q, d, {i: {-W: 1}}, W)]
        elems += [_random_H(rng, field, q, d, W) for _ in range(samples)]
        for h in elems:
            for n in range(W + 1):
                tn = _t(field, q, d, k, -n * power, W)
                tn_inv = _t(field, q, d, k, n * power, W)
                if in_L(_conj(tn, h, tn_inv), i):
                    worst = max(worst, n)
                    break
            else:
                return False, W + 1
    return True, worst


def check_intersection(rng, field, q, d, W=DEFAULT_WINDOW, samples=100):
    """g lies in every L_j exactly when all its translation coordinates lie in R."""
    for _ in range(samples):
        coords = {}
        for j in range(d):
            low = rng.randint(-W, W - 1)
            coords[j] = {low: rng.randrange(1, q)}
        g = _translation(field, q, d, coords, W)
        every = all(in_L(g, j) for j in range(d))
        if every != all(_coord_in_R(x) for x in g.shifts):
            return False
    return True


def check_double_coset(rng, field, q, d, W=DEFAULT_WINDOW, samples=30):
    """Write random h in H as y z with y in the other L_j and z in L_ell."""
    for ell in range(d):
        for _ in range(samples):
            h = _random_H(rng, field, q, d, W)
            y_shift = tuple(x if j == ell else field_zero(field, q, W) for j, x in enumerate(h.shifts))
            y = AffineMap(field, q, (field_one(field, q, 4 * W),) * d, y_shift)
            z_shift = tuple(field_zero(field, q, W) if j == ell else x for j, x in enumerate(h.shifts))
            z = AffineMap(field, q, h.scales, z_shift)
            if not all(in_L(y, j) for j in range(d) if j != ell) or not in_L(z, ell):
                return False
            if not compose(y, z).agrees(h):
                return False
    return True


def check_lattice_conditions(d: int, q: int, window: int = DEFAULT_WINDOW, field: str = "laurent",
                            seed: int = 0) -> dict:
    if d < 2:
        raise PreconditionError("d must be at least 2")
    if not is_prime(q):
        raise PreconditionError(f"{q} is not prime")
    rng = random.Random(seed)
    index = check_index(field, q, d, window)
    exhausted, worst = check_exhaustion(rng, field, q, d, window)
    report = {
        "d": d,
        "q": q,
        "window": window,
        "field": field,
        "index": {"passed": all(v == q for v in index.values()), "values": [index[i] for i in range(d)]},
        "exhaustion": {"passed": exhausted, "max_n": worst},
        "intersection": {"passed": check_intersection(rng, field, q, d, window)},
        "double_coset": {"passed": check_double_coset(rng, field, q, d, window)},
    }
    report["passed"] = all(report[k]["passed"] for k in ("index", "exhaustion", "intersection", "double_coset"))
    return report
