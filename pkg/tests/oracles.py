"""Brute-force reference implementations, kept independent of the package."""
import cmath
import math
from itertools import product


def tuscan_violations(rows, k):
    """All (d, a, b) triples seen at two places, straight from the definition."""
    seen = {}
    for i, row in enumerate(rows):
        for c in range(len(row)):
            for d in range(1, k + 1):
                if c + d < len(row):
                    seen.setdefault((d, row[c], row[c + d]), []).append((i, c))
    return {key: locs for key, locs in seen.items() if len(locs) > 1}


def is_tuscan(rows, k):
    n = len(rows[0])
    if any(sorted(r) != list(range(n)) for r in rows):
        return False
    return not tuscan_violations(rows, k)


def shift_solutions(p1, p2, tau):
    n = len(p1)
    return sum(1 for j in range(n) if 0 <= j + tau < n and p1[j] == p2[j + tau])


def unit(e, n):
    return cmath.exp(2j * math.pi * e / n)


def acf(c, d, tau, n):
    N = len(c)
    if tau >= 0:
        return sum(unit(c[t], n) * unit(d[t + tau], n).conjugate() for t in range(N - tau))
    return sum(unit(c[t - tau], n) * unit(d[t], n).conjugate() for t in range(N + tau))


def set_corr(A, B, tau, n):
    return sum(acf(a, b, tau, n) for a, b in zip(A, B))


def delta_max(sets, n):
    """Over every ordered pair and every shift, including negative ones."""
    N = len(sets[0][0])
    best = 0.0
    for (i, A), (j, B) in product(enumerate(sets), repeat=2):
        for tau in range(-N + 1, N):
            if i == j and tau == 0:
                continue
            best = max(best, abs(set_corr(A, B, tau, n)))
    return best


def cyclotomic_by_roots(n):
    """Phi_n from its primitive roots, rounded to integers."""
    coeffs = [1 + 0j]
    for j in range(1, n + 1):
        if math.gcd(j, n) == 1:
            r = unit(j, n)
            coeffs = [(coeffs[i - 1] if i > 0 else 0) - r * (coeffs[i] if i < len(coeffs) else 0)
                      for i in range(len(coeffs) + 1)]
    return [round(c.real) for c in coeffs]
