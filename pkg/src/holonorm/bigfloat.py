"""Precision-parameterized floating arithmetic on top of mpmath.

Every non-exact numeric result in the package is an ``mpmath.mpf`` produced
under an explicit binary precision.  The paired-precision protocol runs the
same computation at P and 2P bits and accepts the digits on which the two
runs agree; callers escalate precision when too few digits agree.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp, mpf, workprec

#: decimal digits carried by a binary precision
def decimal_digits(prec_bits: int) -> int:
    return int(prec_bits * 0.30102999566398115)


def to_mpf(x, prec: int):
    """Convert int/Fraction/float/mpf to an mpf rounded at ``prec`` bits."""
    with workprec(prec):
        if isinstance(x, Fraction):
            with workprec(prec + 16):
                v = mpf(x.numerator) / mpf(x.denominator)
            return +v
        return +mpf(x)


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a finite mpf."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp != 0:
            raise ValueError("cannot convert non-finite value to Fraction")
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return mpf_to_fraction(x)


def agreed_digits(a, b, scale=None) -> int:
    """Decimal digits on which two runs of a computation agree.

    Compared exactly through rationals so high-precision agreement is not
    masked by rounding.  ``scale`` sets the reference magnitude for
    near-zero quantities; by default the larger magnitude is used.
    """
    fa, fb = _exact(a), _exact(b)
    diff = abs(fa - fb)
    ref = max(abs(fa), abs(fb))
    if scale is not None:
        ref = max(ref, abs(_exact(scale)))
    if diff == 0:
        return 10 ** 6
    if ref == 0 or diff >= ref:
        return 0
    q = ref / diff
    bits = q.numerator.bit_length() - q.denominator.bit_length() - 1
    return max(0, int(bits * 0.30102999566398115))


def agreed_digits_seq(xs, ys, scale=None) -> int:
    """Minimum agreement over two equally long sequences of values."""
    if not xs:
        return 10 ** 6
    return min(agreed_digits(x, y, scale=scale) for x, y in zip(xs, ys))


def paired_eval(compute, prec: int, want_digits: int, max_doublings: int = 3):
    """Run ``compute(prec)`` at P and 2P bits until enough digits agree.

    ``compute`` returns a sequence of mpf values.  Returns
    ``(values_at_2P, agreed, final_prec)``.  When the escalation cap is hit
    the best attempt is returned; the caller decides whether the agreement
    is sufficient.
    """
    best = None
    for _ in range(max_doublings + 1):
        lo = compute(prec)
        hi = compute(2 * prec)
        agreed = agreed_digits_seq(lo, hi)
        if best is None or agreed > best[1]:
            best = (hi, agreed, prec)
        if agreed >= want_digits:
            return hi, agreed, prec
        prec *= 2
    return best


def decimal_str(x, digits: int = 17) -> str:
    """Deterministic decimal rendering of an mpf/int/Fraction."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        x = to_mpf(x, max(64, digits * 4))
    digits = max(1, min(digits, 40))
    from mpmath import nstr

    return nstr(x, digits, strip_zeros=True)


def fraction_str(x: Fraction) -> str:
    """Exact string form of a rational (``p`` or ``p/q``)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
