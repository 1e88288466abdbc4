"""Asymptotic expansion of recurrence solutions and ratio extrapolation.

For a recurrence with polynomial coefficients whose characteristic
polynomial has a simple, real, positive, strictly dominant root L, the
solutions behave like ``C * L**n * n**r * (1 + b_1/n + ... + b_M/n**M)``.
This module computes L exactly (Sturm bisection), then r and the series
coefficients numerically under the paired-precision protocol.  Scales
outside that shape (factorial growth, complex or repeated dominant roots)
raise typed :class:`~holonorm.errors.Unsupported` errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf, workprec
import mpmath

from .bigfloat import agreed_digits, decimal_digits, fraction_str, mpf_to_fraction, to_mpf, decimal_str
from .errors import (
    DivisionByVanishingSeries,
    NonRationalExponent,
    UNSUPPORTED_COMPLEX_PAIR,
    UNSUPPORTED_DEGENERATE,
    UNSUPPORTED_MULTIPLE_DOMINANT,
    UNSUPPORTED_NEGATIVE_DOMINANT,
    UNSUPPORTED_REPEATED_ROOT,
    UNSUPPORTED_SUBEXPONENTIAL,
    UNSUPPORTED_SUPEREXPONENTIAL,
    Unsupported,
    UnstableExtrapolation,
)
from .ore import Recurrence
from .polys import Poly, RootEnclosure, isolate_root, squarefree_decomposition, squarefree_part, sturm_count

Q0 = Fraction(0)
Q1 = Fraction(1)


def char_poly(rec: Recurrence) -> Poly:
    """Characteristic polynomial from the top-degree coefficients.

    With ``D = max_i deg p_i``, returns ``sum_i [n^D](p_i) * L**i``.
    Degenerate shapes signal growth scales this engine does not cover.
    """
    if all(p.is_zero for p in rec.coeffs):
        raise Unsupported(UNSUPPORTED_DEGENERATE, "zero operator")
    d = max(p.degree for p in rec.coeffs if not p.is_zero)
    chi = Poly([p.coeff(d) for p in rec.coeffs])
    if chi.degree <= 0:
        raise Unsupported(
            UNSUPPORTED_SUPEREXPONENTIAL,
            "characteristic polynomial is constant; solutions outgrow "
            "every exponential")
    if all(c == 0 for c in chi.coeffs[:-1]):
        raise Unsupported(
            UNSUPPORTED_SUBEXPONENTIAL,
            "characteristic polynomial is a monomial; solutions decay "
            "below every exponential")
    return chi


@dataclass(frozen=True)
class AsymptoticForm:
    """Leading asymptotics ``C * lambda**n * n**r * (1 + sum b_s / n**s)``."""

    lam: object                       # mpf value of the dominant root
    lam_enclosure: RootEnclosure
    r: object                         # Fraction when reconstructed, else mpf
    r_is_exact: bool
    series: tuple                     # mpf b_1..b_M
    M: int
    prec: int
    agreed: int                       # decimal digits agreed between P and 2P runs
    rho: int = 1

    @property
    def r_fraction(self) -> Fraction:
        if not self.r_is_exact:
            raise NonRationalExponent(f"exponent {self.r} is not rational")
        return self.r

    def to_json_dict(self):
        digits = max(1, min(self.agreed, 24))
        return {
            "lambda": decimal_str(self.lam, digits),
            "lambda_enclosure_radius": fraction_str(self.lam_enclosure.radius),
            "r": fraction_str(self.r) if self.r_is_exact else decimal_str(self.r, digits),
            "r_exact": self.r_is_exact,
            "b": [decimal_str(b, digits) for b in self.series],
            "M": self.M,
            "rho": self.rho,
            "agreed_digits": self.agreed,
        }


def _numeric_roots(p: Poly, prec: int):
    coeffs = [to_mpf(c, prec + 64) for c in reversed(p.coeffs)]
    with workprec(prec + 64):
        for extra in (10, prec // 2, 2 * prec):
            try:
                return mpmath.polyroots(coeffs, maxsteps=200, extraprec=extra)
            except mpmath.libmp.NoConvergence:
                continue
    raise Unsupported(UNSUPPORTED_DEGENERATE, "root finding did not converge")


def _dominant_root(chi: Poly, prec: int) -> RootEnclosure:
    """Certified enclosure of the dominant root, with scale checks.

    The dominant root must be real, positive, simple, and strictly
    dominant in modulus with relative margin ``2**(-prec/4)``.
    """
    sf = squarefree_part(chi)
    margin = mpf(2) ** (-(prec // 4))

    positive = sturm_count(sf, 0, None)
    roots = _numeric_roots(sf, prec)
    if positive == 0:
        with workprec(prec + 16):
            top = max(roots, key=lambda z: abs(z))
            if abs(top.imag) <= abs(top) * margin:
                raise Unsupported(
                    UNSUPPORTED_NEGATIVE_DOMINANT,
                    "dominant characteristic root is real negative")
            raise Unsupported(
                UNSUPPORTED_COMPLEX_PAIR,
                "dominant characteristic roots form a complex pair")

    enc = isolate_root(sf, "largest-real", prec=prec)
    with workprec(prec + 16):
        lam = enc.value(prec)
        others = []
        best = None
        for z in roots:
            d = abs(z - lam)
            if best is None or d < best[0]:
                best = (d, z)
        for z in roots:
            if z is not best[1]:
                others.append(z)
        if others:
            maxother = max(abs(z) for z in others)
            if maxother > lam * (1 + margin):
                top = max(others, key=lambda z: abs(z))
                if abs(top.imag) <= abs(top) * margin and top.real < 0:
                    raise Unsupported(
                        UNSUPPORTED_NEGATIVE_DOMINANT,
                        "a negative real root dominates the largest "
                        "positive root")
                raise Unsupported(
                    UNSUPPORTED_COMPLEX_PAIR,
                    "a complex pair dominates the largest real root")
            if maxother >= lam * (1 - margin):
                raise Unsupported(
                    UNSUPPORTED_MULTIPLE_DOMINANT,
                    "several characteristic roots share the dominant "
                    "modulus")

    for factor, mult in squarefree_decomposition(chi):
        if mult > 1:
            lo, hi = enc.lo, enc.hi
            hit = factor(enc.lo) == 0 if enc.is_exact else (
                factor(lo) * factor(hi) <= 0)
            if hit:
                raise Unsupported(
                    UNSUPPORTED_REPEATED_ROOT,
                    "dominant characteristic root is repeated")
    return enc


def _binom_series(t, i, length, prec):
    """Coefficients of (1 + i*u)**t up to u**(length-1), t an mpf."""
    with workprec(prec):
        out = [mpf(1)]
        c = mpf(1)
        for m in range(1, length):
            c = c * (t - (m - 1)) / m
            out.append(c * (mpf(i) ** m))
        return out


def _solve_series(rec: Recurrence, M: int, prec: int, enc: RootEnclosure):
    """Solve for (r, b_1..b_M) at the given working precision."""
    d_top = max(p.degree for p in rec.coeffs)
    wp = prec + 48
    with workprec(wp):
        lam = to_mpf(enc.midpoint, wp)
        lam_pows = [lam ** i for i in range(len(rec.coeffs))]
        # A_i[j] = coefficient of n**(D-j) in p_i
        cols = []
        for p in rec.coeffs:
            cols.append([to_mpf(p.coeff(d_top - j), wp) for j in range(M + 2)])

        def residual_coeff(k, r_val, bs):
            # coefficient of u**k in sum_i lam**i A_i(u)
            #   * sum_s b_s u**s (1+i*u)**(r-s)
            total = mpf(0)
            for i, ai in enumerate(cols):
                f = [mpf(0)] * (k + 1)
                for s in range(0, min(k, M) + 1):
                    b = bs[s]
                    if b == 0:
                        continue
                    bin_ = _binom_series(r_val - s, i, k - s + 1, wp)
                    for t in range(s, k + 1):
                        f[t] += b * bin_[t - s]
                conv = mpf(0)
                for j in range(0, k + 1):
                    if j < len(ai) and ai[j] != 0 and f[k - j] != 0:
                        conv += ai[j] * f[k - j]
                total += lam_pows[i] * conv
            return total

        bs = [mpf(1)] + [mpf(0)] * M
        g0 = residual_coeff(1, mpf(0), bs)
        g1 = residual_coeff(1, mpf(1), bs)
        denom = g1 - g0
        if denom == 0:
            raise Unsupported(UNSUPPORTED_DEGENERATE,
                              "exponent equation is singular")
        r_num = -g0 / denom

        r_exact, r_is_exact = _reconstruct_rational(r_num, prec)
        r_val = to_mpf(r_exact, wp) if r_is_exact else r_num

        for s in range(1, M + 1):
            bs[s] = mpf(0)
            h0 = residual_coeff(s + 1, r_val, bs)
            bs[s] = mpf(1)
            h1 = residual_coeff(s + 1, r_val, bs)
            dd = h1 - h0
            if dd == 0:
                raise Unsupported(UNSUPPORTED_DEGENERATE,
                                  f"series equation at order {s} is singular")
            bs[s] = -h0 / dd
        return r_num, (r_exact, r_is_exact), bs[1:]


def _reconstruct_rational(x, prec, max_den: int = 64):
    """Nearest fraction with small denominator, accepted inside 2**(-prec/3)."""
    fx = mpf_to_fraction(x)
    cand = fx.limit_denominator(max_den)
    if abs(cand - fx) <= Fraction(2) ** (-(prec // 3)):
        return cand, True
    return None, False


def expand_asymptotics(rec: Recurrence, M: int = 6, prec: int = 256,
                       want_digits: int | None = None,
                       max_doublings: int = 2) -> AsymptoticForm:
    """Dominant-root asymptotic form of the recurrence's solutions.

    Runs the series solve at P and 2P bits, reports the agreed decimal
    digits, and escalates the precision (up to ``max_doublings``) when
    agreement falls short of ``want_digits``.
    """
    chi = char_poly(rec)
    if want_digits is None:
        want_digits = max(12, decimal_digits(prec) // 3)

    attempt = prec
    best = None
    for _ in range(max_doublings + 1):
        enc_lo = _dominant_root(chi, attempt)
        enc_hi = _dominant_root(chi, 2 * attempt)
        r_lo, _, bs_lo = _solve_series(rec, M, attempt, enc_lo)
        r_hi, (r_exact, r_is_exact), bs_hi = _solve_series(rec, M, 2 * attempt, enc_hi)
        scale = max([mpf(1)] + [abs(b) for b in bs_hi])
        agreed = min(
            agreed_digits(r_lo, r_hi, scale=1),
            min((agreed_digits(a, b, scale=scale)
                 for a, b in zip(bs_lo, bs_hi)), default=10 ** 6),
        )
        form = AsymptoticForm(
            lam=enc_hi.value(2 * attempt),
            lam_enclosure=enc_hi,
            r=r_exact if r_is_exact else r_hi,
            r_is_exact=r_is_exact,
            series=tuple(bs_hi),
            M=M,
            prec=attempt,
            agreed=agreed,
        )
        if best is None or agreed > best.agreed:
            best = form
        if agreed >= want_digits:
            return form
        attempt *= 2
    return best


# --- truncated series ---------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Truncated expansion ``sum_s coeffs[s] * n**(anchor - s)``."""

    anchor: Fraction
    coeffs: tuple
    prec: int = 256

    @classmethod
    def from_form(cls, form: AsymptoticForm) -> "TruncSeries":
        one = to_mpf(1, form.prec)
        return cls(Q0, (one,) + tuple(form.series), form.prec)

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def scale(self, c) -> "TruncSeries":
        with workprec(self.prec):
            c = mpf(c) if not isinstance(c, Fraction) else to_mpf(c, self.prec)
            return TruncSeries(self.anchor, tuple(x * c for x in self.coeffs),
                               self.prec)

    def with_anchor(self, anchor: Fraction) -> "TruncSeries":
        """Reanchor, shifting coefficients; offset must be a small
        nonnegative integer."""
        anchor = Fraction(anchor)
        off = anchor - self.anchor
        if off.denominator != 1 or off < 0:
            raise ValueError(f"cannot shift anchor by {off}")
        off = int(off)
        with workprec(self.prec):
            coeffs = (mpf(0),) * off + self.coeffs
        return TruncSeries(anchor, coeffs, self.prec)


def series_arith(u: TruncSeries, v: TruncSeries, op: str) -> TruncSeries:
    """Exactly truncated arithmetic on expansions in inverse powers of n."""
    prec = max(u.prec, v.prec)
    with workprec(prec):
        if op in ("add", "sub"):
            anchor = max(u.anchor, v.anchor)
            uu = u.with_anchor(anchor)
            vv = v.with_anchor(anchor)
            n = min(uu.length, vv.length)
            sgn = 1 if op == "add" else -1
            coeffs = tuple(uu.coeffs[i] + sgn * vv.coeffs[i] for i in range(n))
            return TruncSeries(anchor, coeffs, prec)
        if op == "mul":
            n = min(u.length, v.length)
            out = [mpf(0)] * n
            for i in range(n):
                if u.coeffs[i] == 0:
                    continue
                for j in range(n - i):
                    out[i + j] += u.coeffs[i] * v.coeffs[j]
            return TruncSeries(u.anchor + v.anchor, tuple(out), prec)
        if op == "div":
            n = min(u.length, v.length)
            vmax = max(abs(c) for c in v.coeffs) if v.coeffs else mpf(0)
            v0 = v.coeffs[0] if v.coeffs else mpf(0)
            if v0 == 0 or (vmax > 0 and abs(v0) < vmax * mpf(2) ** (-prec + 4)):
                raise DivisionByVanishingSeries(
                    "leading series coefficient vanishes")
            out = [mpf(0)] * n
            for i in range(n):
                acc = u.coeffs[i]
                for j in range(i):
                    acc -= out[j] * v.coeffs[i - j]
                out[i] = acc / v0
            return TruncSeries(u.anchor - v.anchor, tuple(out), prec)
    raise ValueError(f"unknown op {op!r}")


# --- ratio extrapolation --------------------------------------------------


@dataclass(frozen=True)
class RatioEstimate:
    """Extrapolated limit of num(n) / (den(n) * n**gap)."""

    value: object                # mpf
    depth: int
    stability: object            # mpf: max disagreement of last 3 depths
    stable: bool
    exact_path: bool = True

    def to_json_dict(self):
        return {
            "value": decimal_str(self.value, 20),
            "depth": self.depth,
            "stability": decimal_str(self.stability, 5),
            "stable": self.stable,
        }


def estimate_ratio(num_terms, den_terms, gap, depth: int = 6,
                   prec: int = 256, rel_tolerance: float = 1e-6) -> RatioEstimate:
    """Neville extrapolation of ``num(n)/(den(n) n**gap)`` to n = infinity.

    Both term lists are indexed from n = 0 and must have equal length of
    at least ``depth + 8``.  Integer gaps keep the whole tableau in exact
    rational arithmetic; non-integer gaps fall back to mpf arithmetic at
    ``prec`` bits.
    """
    if len(num_terms) != len(den_terms):
        raise ValueError("term lists must cover the same index range")
    if depth < 2:
        raise ValueError("depth must be at least 2")
    count = depth + 8
    if len(num_terms) < count + 1:
        raise ValueError(f"need at least {count + 1} terms for depth {depth}")

    gap = Fraction(gap) if not isinstance(gap, Fraction) and not hasattr(gap, "_mpf_") else gap
    exact = isinstance(gap, Fraction) and gap.denominator == 1

    usable = [n for n in range(1, len(num_terms)) if Fraction(den_terms[n]) != 0]
    if len(usable) < count:
        raise ValueError("not enough usable sample points")
    n_max = usable[-1]
    stride = max(1, n_max // (2 * count))
    nodes = []
    n = n_max
    while len(nodes) < count and n >= 1:
        if Fraction(den_terms[n]) != 0:
            nodes.append(n)
        n -= stride
    if len(nodes) < count:
        nodes = usable[-count:]
    nodes = sorted(nodes)

    if exact:
        g = int(gap)
        xs = [Fraction(1, n) for n in nodes]
        hs = []
        for n in nodes:
            scale = Fraction(n) ** g
            hs.append(Fraction(num_terms[n]) / (Fraction(den_terms[n]) * scale))
        tableau = _neville_to_zero(xs, hs, depth)
        vals = [to_mpf(tableau[j], prec) for j in range(depth - 2, depth + 1)]
    else:
        with workprec(prec + 32):
            xs = [mpf(1) / n for n in nodes]
            hs = []
            for n in nodes:
                scale = mpf(n) ** (to_mpf(gap, prec + 32) if isinstance(gap, Fraction) else gap)
                hs.append(to_mpf(Fraction(num_terms[n]), prec + 32)
                          / (to_mpf(Fraction(den_terms[n]), prec + 32) * scale))
            tableau = _neville_to_zero(xs, hs, depth)
            vals = [tableau[j] for j in range(depth - 2, depth + 1)]

    with workprec(prec):
        value = +vals[-1]
        stability = max(abs(vals[-1] - vals[-2]), abs(vals[-2] - vals[-3]))
        ref = max(abs(value), mpf(1) * mpf(10) ** (-30))
        stable = bool(stability <= ref * mpf(rel_tolerance))
    if not stable:
        raise UnstableExtrapolation(
            f"extrapolation depths {depth-2}..{depth} disagree by "
            f"{decimal_str(stability, 3)} (relative tolerance {rel_tolerance})")
    return RatioEstimate(value=value, depth=depth, stability=stability,
                         stable=stable, exact_path=exact)


def _neville_to_zero(xs, hs, depth):
    """Last-row Neville tableau entries for columns 0..depth at t = 0."""
    m = len(xs)
    cur = list(hs)
    last_row = [cur[-1]]
    for j in range(1, depth + 1):
        nxt = list(cur)
        for i in range(j, m):
            xi, xij = xs[i], xs[i - j]
            nxt[i] = (xij * cur[i] - xi * cur[i - 1]) / (xij - xi)
        cur = nxt
        last_row.append(cur[-1])
    return last_row
