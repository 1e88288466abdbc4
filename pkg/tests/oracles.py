"""Independent oracle implementations used to freeze expected test values.

Everything here is deliberately primitive (direct summation, dynamic
programming, double-precision brute force) and shares no code with the
package under test.
"""

import math
from fractions import Fraction


def apery_row(n):
    return [Fraction(math.comb(n, k) ** 2 * math.comb(n + k, k))
            for k in range(n + 1)]


def franel_row(n):
    return [Fraction(math.comb(n, k) ** 3) for k in range(n + 1)]


def term_vectors(row_fn, n_max):
    """F0, F1, F2 for rows produced by ``row_fn``."""
    f0, f1, f2 = [], [], []
    for n in range(n_max + 1):
        row = row_fn(n)
        f0.append(sum(row, Fraction(0)))
        f1.append(sum((k * v for k, v in enumerate(row)), Fraction(0)))
        f2.append(sum((k * (k - 1) * v for k, v in enumerate(row)), Fraction(0)))
    return f0, f1, f2


def catalan_by_dyck_paths(n):
    """Dyck path count by DP over (position, height)."""
    heights = {0: 1}
    for _ in range(2 * n):
        nxt = {}
        for h, c in heights.items():
            for dh in (1, -1):
                nh = h + dh
                if nh >= 0:
                    nxt[nh] = nxt.get(nh, 0) + c
        heights = nxt
    return heights.get(0, 0)


def central_delannoy_by_paths(n):
    """Lattice paths (0,0) -> (n,n) with E/N/D steps, DP table."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(n + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            v = 0
            if i > 0:
                v += table[i - 1][j]
            if j > 0:
                v += table[i][j - 1]
            if i > 0 and j > 0:
                v += table[i - 1][j - 1]
            table[i][j] = v
    return table[n][n]


def central_trinomial_by_convolution(n):
    """Middle coefficient of (1 + x + x^2)**n by repeated convolution."""
    poly = [1]
    for _ in range(n):
        out = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            out[i] += c
            out[i + 1] += c
            out[i + 2] += c
        poly = out
    return poly[n]


def real_root_count_numeric(coeffs, tol=1e-8):
    """Count real roots (with multiplicity) via numpy at double precision."""
    import numpy as np

    cs = [float(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return 0
    roots = np.roots(list(reversed(cs)))
    scale = max(1.0, max(abs(r) for r in roots))
    return int(sum(1 for r in roots if abs(r.imag) <= tol * scale))


def negative_real_root_count_numeric(coeffs, tol=1e-8):
    import numpy as np

    cs = [float(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    roots = np.roots(list(reversed(cs)))
    scale = max(1.0, max(abs(r) for r in roots))
    return int(sum(1 for r in roots
                   if abs(r.imag) <= tol * scale and r.real < 0))


def brute_kolmogorov(row, mu, sigma):
    """Double-precision Kolmogorov distance of a row to the normal CDF."""
    total = sum(Fraction(v) for v in row)
    probs = [float(Fraction(v) / total) for v in row]
    cdf = 0.0
    best = 0.0
    for k in range(len(row)):
        x = (k - mu) / sigma
        phi = 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))
        best = max(best, abs(cdf - phi))
        cdf += probs[k]
        best = max(best, abs(cdf - phi))
    return best


def brute_llt_sup(row, mu, sigma):
    """Double-precision density sup-distance, cell endpoints plus mode."""
    total = sum(Fraction(v) for v in row)
    probs = [float(Fraction(v) / total) for v in row]
    n = len(row) - 1

    def pdf(x):
        return math.exp(-x * x / 2.0) / math.sqrt(2.0 * math.pi)

    best = 0.0
    for k in range(len(row)):
        pk = sigma * probs[k]
        x_lo = (k - mu) / sigma
        x_hi = (k + 1 - mu) / sigma
        best = max(best, abs(pk - pdf(x_lo)), abs(pk - pdf(x_hi)))
        if x_lo < 0.0 < x_hi:
            best = max(best, abs(pk - pdf(0.0)))
    best = max(best, pdf((0 - mu) / sigma), pdf((n + 1 - mu) / sigma))
    return best
