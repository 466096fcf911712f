"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; each oracle takes a different route
(bialternants, the Frobenius formula, brute-force enumeration, hook products).
"""

from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod


def brute_partitions(n):
    """All partitions of ``n`` as tuples, by filtering sorted compositions."""
    out = set()

    def rec(rest, cap, acc):
        if rest == 0:
            out.add(tuple(acc))
            return
        for k in range(1, min(rest, cap) + 1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return sorted(out, reverse=True)


def perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        sign *= -1 if length % 2 == 0 else 1
    return sign


def leibniz_det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    return sum(perm_sign(p) * prod(m[i][p[i]] for i in range(n)) for p in permutations(range(n)))


def bialternant_schur(lam, xs):
    """``det(x_i^(lam_j + n - j)) / det(x_i^(n - j))`` for distinct ``xs``."""
    n = len(xs)
    lam = tuple(lam) + (0,) * (n - len(lam))
    if len(lam) > n:
        return Fraction(0)
    num = [[Fraction(x) ** (lam[j] + n - 1 - j) for j in range(n)] for x in xs]
    den = [[Fraction(x) ** (n - 1 - j) for j in range(n)] for x in xs]
    return leibniz_det(num) / leibniz_det(den)


def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def frobenius_character(lam, mu):
    """``chi_lam(mu)`` as the coefficient of ``x^(lam + delta)`` in ``Delta(x) p_mu(x)``."""
    n = len(lam)
    if n == 0:
        return 1 if not mu else 0
    vandermonde = {(0,) * n: 1}
    for i in range(n):
        for j in range(i + 1, n):
            term = {}
            e = [0] * n
            e[i] = 1
            term[tuple(e)] = 1
            e = [0] * n
            e[j] = 1
            term[tuple(e)] = -1
            vandermonde = _poly_mul(vandermonde, term)
    poly = vandermonde
    for k in mu:
        pk = {}
        for i in range(n):
            e = [0] * n
            e[i] = k
            pk[tuple(e)] = 1
        poly = _poly_mul(poly, pk)
    target = tuple(lam[i] + n - 1 - i for i in range(n))
    return poly.get(target, 0)


def hook_dimension(lam):
    """Number of standard tableaux by the hook-length formula."""
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(sum(lam)) // hooks


def ssyt_count(lam, n):
    """Semistandard tableaux of shape ``lam`` with entries in ``1..n``, by brute force."""
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i])]
    count = 0
    for filling in product(range(1, n + 1), repeat=len(cells)):
        t = dict(zip(cells, filling))
        ok = all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t)
        ok = ok and all(t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t)
        count += ok
    return count


def content_product(a, lam):
    return prod((a + j - i for i in range(len(lam)) for j in range(lam[i])), start=Fraction(1))
