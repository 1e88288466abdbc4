"""Exact linear algebra: fraction-free nullspace over the rationals and
Gaussian elimination over arbitrary exact coefficient fields."""

from __future__ import annotations

import math
from fractions import Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def _rows_to_int(rows):
    out = []
    for row in rows:
        lcm = 1
        frow = [Fraction(x) for x in row]
        for x in frow:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in frow])
    return out


def nullspace_ff(rows):
    """Exact basis of the right nullspace of a rational matrix.

    Rows are scaled to integers and reduced by fraction-free (Bareiss)
    elimination; back-substitution then produces one basis vector per free
    column.  Vectors are normalized to coprime integers with positive
    first nonzero entry.  Returns an empty list for a trivial nullspace.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    m = _rows_to_int(rows)
    nrows = len(m)

    pivots = []  # (row, col) in elimination order
    prev = 1
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            if all(x == 0 for x in m[i][c:]):
                continue
            mic = m[i][c]
            for j in range(c, ncols):
                m[i][j] = (piv * m[i][j] - mic * m[r][j]) // prev
        prev = piv
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break

    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [Q0] * ncols
        vec[fc] = Q1
        for pr, pc in reversed(pivots):
            s = Q0
            for j in range(pc + 1, ncols):
                if m[pr][j] and vec[j]:
                    s += Fraction(m[pr][j]) * vec[j]
            vec[pc] = -s / m[pr][pc]
        basis.append(normalize_rational_vector(vec))
    return basis


def normalize_rational_vector(vec):
    """Scale to coprime integers with the first nonzero entry positive."""
    vec = [Fraction(x) for x in vec]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(Fraction(x) for x in ints)


# --- nullspace over a polynomial ring, entries as integer term dicts -------
#
# Entries are dicts mapping exponent tuples to int coefficients.  Bareiss
# elimination keeps every intermediate value an integer polynomial (entry
# degrees grow linearly with depth); nullspace vectors come out as Cramer
# minors of the pivot submatrix, so they are integer polynomials too.


def _pd_mul(a, b):
    out = {}
    if len(a) > len(b):
        a, b = b, a
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            s = out.get(k, 0) + v1 * v2
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out


def _pd_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def _pd_exact_div(a, b):
    """Exact division of integer term dicts under lex order."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    rem = dict(a)
    out = {}
    lt = max(b)
    lc = b[lt]
    while rem:
        m = max(rem)
        q = tuple(x - y for x, y in zip(m, lt))
        if any(x < 0 for x in q) or rem[m] % lc:
            raise ValueError("inexact polynomial division")
        c = rem[m] // lc
        out[q] = c
        for k2, v2 in b.items():
            k = tuple(x + y for x, y in zip(q, k2))
            s = rem.get(k, 0) - c * v2
            if s:
                rem[k] = s
            elif k in rem:
                del rem[k]
    return out


def _pd_bareiss(m, track_pivots=True):
    """In-place fraction-free elimination; returns (pivots, last_pivot)."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    prev = None
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            # fully zero tails stay zero under the Bareiss update
            if not mic and not any(m[i][j] for j in range(c, ncols)):
                continue
            for j in range(c, ncols):
                num = _pd_sub(_pd_mul(piv, m[i][j]), _pd_mul(mic, m[r][j]))
                m[i][j] = _pd_exact_div(num, prev) if prev is not None else num
        prev = piv
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    return pivots, prev


def _pd_det(rows):
    """Determinant of a square matrix of integer term dicts (Bareiss)."""
    n = len(rows)
    if n == 0:
        return {(): 1}
    m = [list(r) for r in rows]
    sign = 1
    prev = None
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return {}
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            mic = m[i][c]
            for j in range(c, n):
                num = _pd_sub(_pd_mul(piv, m[i][j]), _pd_mul(mic, m[c][j]))
                m[i][j] = _pd_exact_div(num, prev) if prev is not None else num
        prev = piv
    det = m[n - 1][n - 1]
    if sign < 0:
        det = {k: -v for k, v in det.items()}
    return det


def nullspace_poly_dict(rows):
    """Nullspace basis for a matrix of integer term-dict polynomials.

    One integer-polynomial vector per free column: the free entry is the
    pivot-minor determinant and the pivot entries are the Cramer
    replacement minors, so no rational functions ever appear.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    pivots, _ = _pd_bareiss(work)
    pivot_rows = [r for r, _ in pivots]
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    if not free_cols:
        return []
    base = [[rows[r][c] for c in pivot_cols] for r in pivot_rows]
    det_p = _pd_det(base)
    basis = []
    for fc in free_cols:
        vec = [{} for _ in range(ncols)]
        vec[fc] = det_p
        for idx, pc in enumerate(pivot_cols):
            repl = [list(row) for row in base]
            for rr, prow in enumerate(pivot_rows):
                repl[rr][idx] = rows[prow][fc]
            d = _pd_det(repl)
            vec[pc] = {k: -v for k, v in d.items()}
        basis.append(vec)
    return basis


def nullspace_field(rows, zero, one):
    """Right-nullspace basis over an exact field given by element objects.

    Elements must support ``+ - * /``, equality with ``zero`` via
    ``is_zero``, and be immutable.  ``zero``/``one`` are the field
    constants.  Returns a list of tuples of field elements (unnormalized).
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    m = [row[:] for row in rows]
    nrows = len(m)

    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break

    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for pr, pc in pivots:
            v = m[pr][fc]
            if not v.is_zero:
                vec[pc] = zero - v
        basis.append(tuple(vec))
    return basis
