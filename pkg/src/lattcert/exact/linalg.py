"""Gaussian elimination over the rationals.

Matrices are lists of rows; entries are anything `Fraction` accepts.
"""
from fractions import Fraction


def _copy(rows):
    return [[Fraction(x) for x in row] for row in rows]


def det(rows):
    a = _copy(rows)
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        akk = a[k][k]
        result *= akk
        for i in range(k + 1, n):
            if a[i][k]:
                m = a[i][k] / akk
                row_k = a[k]
                a[i] = [x - m * y for x, y in zip(a[i], row_k)]
    return result


def rank(rows):
    """Rank over Q, with the pivot columns (in elimination order)."""
    a = _copy(rows)
    if not a:
        return 0, []
    ncols = len(a[0])
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                m = a[i][c] / a[r][c]
                a[i] = [x - m * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return r, pivots


def inverse(rows):
    n = len(rows)
    a = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(_copy(rows))]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                m = a[i][k]
                a[i] = [x - m * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]
