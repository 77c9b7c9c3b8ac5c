"""Pure-Python reference implementations of the hot loops."""


def roots_mod_p(coeffs, p):
    """Residues r in [0, p) with f(r) = 0 mod p.

    `coeffs` are integers already reduced mod p, lowest degree first.
    """
    rev = list(reversed(coeffs))
    out = []
    for r in range(p):
        acc = 0
        for c in rev:
            acc = (acc * r + c) % p
        if acc == 0:
            out.append(r)
    return out


def _bareiss_det(a, d):
    a = list(a)
    sign = 1
    prev = 1
    for k in range(d - 1):
        if a[k * d + k] == 0:
            for i in range(k + 1, d):
                if a[i * d + k] != 0:
                    for j in range(d):
                        a[k * d + j], a[i * d + j] = a[i * d + j], a[k * d + j]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k * d + k]
        for i in range(k + 1, d):
            aik = a[i * d + k]
            for j in range(k + 1, d):
                a[i * d + j] = (a[i * d + j] * akk - aik * a[k * d + j]) // prev
        prev = akk
    return sign * a[d * d - 1]


def det_box_search(mats, d, bound, target):
    """Coefficient vectors a in [-bound, bound]^k with det(sum a_i mats[i]) == target.

    `mats` holds k flattened d*d integer matrices. Vectors are produced in
    lexicographic order.
    """
    k = len(mats)
    out = []
    a = [-bound] * k
    size = d * d
    while True:
        m = [0] * size
        for i in range(k):
            ai = a[i]
            if ai:
                mi = mats[i]
                for j in range(size):
                    m[j] += ai * mi[j]
        if _bareiss_det(m, d) == target:
            out.append(tuple(a))
        i = k - 1
        while i >= 0 and a[i] == bound:
            a[i] = -bound
            i -= 1
        if i < 0:
            return out
        a[i] += 1
