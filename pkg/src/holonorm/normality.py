"""Normality analysis for coefficient rows.

Covers the exact row moments, the sufficiency check that combines the
three asymptotic expansions into the variance series, per-row
real-rootedness verification by Sturm counting, and the empirical
distribution statistics (Kolmogorov distance to the Gaussian CDF and the
sup-distance of the scaled point masses to the Gaussian density).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf, workprec

from .asym import AsymptoticForm, RatioEstimate, TruncSeries, series_arith
from .bigfloat import decimal_str, fraction_str, to_mpf
from .errors import AllZeroRow, ZeroVariance
from .polys import Poly, real_root_count_with_multiplicity

Q0 = Fraction(0)
Q1 = Fraction(1)


@dataclass(frozen=True)
class MomentEstimates:
    n: int
    mu: Fraction
    sigma2: Fraction


def exact_moments(row, n: int | None = None) -> MomentEstimates:
    """Exact mean and variance of the normalized coefficient row."""
    row = [Fraction(v) for v in row]
    if any(v < 0 for v in row):
        raise ValueError("row has negative entries")
    total = sum(row, Q0)
    if total == 0:
        raise AllZeroRow("row has no nonzero entry")
    s1 = sum((k * v for k, v in enumerate(row)), Q0)
    s2 = sum((k * (k - 1) * v for k, v in enumerate(row)), Q0)
    mu = s1 / total
    sigma2 = s2 / total + mu - mu * mu
    return MomentEstimates(n=len(row) - 1 if n is None else n, mu=mu,
                           sigma2=sigma2)


# --- sufficiency check ------------------------------------------------------


VERDICT_NORMAL = "asymptotically-normal"
VERDICT_INCONCLUSIVE = "inconclusive"


class CancellationAmbiguous(Exception):
    """Surviving variance coefficient too close to the zero threshold."""


@dataclass(frozen=True)
class ConditionOne:
    satisfied: bool
    a: RatioEstimate
    b: RatioEstimate
    detail: str = ""


@dataclass(frozen=True)
class ConditionTwo:
    satisfied: bool
    m: object            # Fraction exponent of the surviving term, or None
    leading: object      # mpf coefficient at exponent m, or None
    detail: str = ""


@dataclass(frozen=True)
class SufficiencyReport:
    condition1: ConditionOne
    condition2: ConditionTwo
    sigma2_series: tuple          # ((exponent, coeff, zeroed), ...) down to 1
    mu_series: TruncSeries
    mu_leading: tuple             # (exponent Fraction, coefficient mpf)
    threshold: object             # mpf zero-declaration threshold
    verdict: str
    reasons: tuple = ()

    def to_json_dict(self):
        return {
            "condition1": {
                "satisfied": self.condition1.satisfied,
                "a": self.condition1.a.to_json_dict(),
                "b": self.condition1.b.to_json_dict(),
                "detail": self.condition1.detail,
            },
            "condition2": {
                "satisfied": self.condition2.satisfied,
                "detail": self.condition2.detail,
            },
            "m": fraction_str(self.condition2.m)
                 if isinstance(self.condition2.m, Fraction) else None,
            "leading": decimal_str(self.condition2.leading, 17)
                       if self.condition2.leading is not None else None,
            "mu_leading": {
                "exponent": fraction_str(self.mu_leading[0]),
                "coefficient": decimal_str(self.mu_leading[1], 17),
            },
            "sigma2_series": [
                {"exponent": fraction_str(e), "coefficient": decimal_str(c, 17),
                 "zeroed": z}
                for e, c, z in self.sigma2_series
            ],
            "threshold": decimal_str(self.threshold, 3),
            "verdict": self.verdict,
            "reasons": list(self.reasons),
        }


def sufficiency_check(forms, ratio_a: RatioEstimate, ratio_b: RatioEstimate,
                      real_rooted=None, nonnegative=None) -> SufficiencyReport:
    """Decide asymptotic normality from the three expansions and ratios.

    ``forms`` are the asymptotic forms of the value, first-derivative and
    second-derivative term vectors at 1.  The variance series is
    assembled as ``b*n**g2*B + a*n**g1*A - a**2*n**(2*g1)*A**2`` with
    A and B the series ratios against the value series; its largest
    surviving exponent m must be a positive integer with positive
    coefficient.  ``real_rooted``/``nonnegative`` carry the external row
    verifications; the verdict is only affirmative when both are True.

    Raises :class:`CancellationAmbiguous` when the surviving coefficient
    is within a decade of the zero threshold; callers retry at doubled
    precision before giving up.
    """
    f0, f1, f2 = forms
    prec = max(f.prec for f in forms)
    reasons = []

    # the three enclosures must overlap: each contains its true dominant
    # root, and the roots must coincide for the ratio series to make sense
    with workprec(prec + 16):
        lam_ref = max(abs(f0.lam), mpf(1))
        gap_ok = True
        for f in (f1, f2):
            tol = ((to_mpf(f.lam_enclosure.radius, prec)
                    + to_mpf(f0.lam_enclosure.radius, prec)) * 4
                   + lam_ref * mpf(2) ** (-min(f.prec, f0.prec) + 8))
            if abs(f.lam - f0.lam) > tol:
                gap_ok = False
    if not gap_ok:
        reasons.append("growth rates of the three sequences disagree")

    if not all(f.r_is_exact for f in forms):
        reasons.append("a growth exponent failed rational reconstruction")
        g1 = g2 = None
    else:
        r0, r1, r2 = f0.r, f1.r, f2.r
        if not (r0 < r1 < r2):
            reasons.append(
                f"exponents are not strictly increasing: {r0}, {r1}, {r2}")
            g1 = g2 = None
        else:
            g1, g2 = r1 - r0, r2 - r0

    cond1_ok = ratio_a.stable and ratio_b.stable
    cond1 = ConditionOne(
        satisfied=bool(cond1_ok and not reasons),
        a=ratio_a, b=ratio_b,
        detail="both ratio limits extrapolated stably" if cond1_ok
        else "ratio extrapolation unstable")

    agreed = min(f.agreed for f in forms)
    s0 = TruncSeries.from_form(f0)
    s1 = TruncSeries.from_form(f1)
    s2 = TruncSeries.from_form(f2)
    a_series = series_arith(s1, s0, "div")
    b_series = series_arith(s2, s0, "div")
    d_series = series_arith(a_series, a_series, "mul")

    with workprec(prec):
        a = ratio_a.value
        b = ratio_b.value
        if g1 is None:
            mu_series = a_series.scale(a)
            return SufficiencyReport(
                condition1=cond1,
                condition2=ConditionTwo(False, None, None,
                                        "exponent gaps unavailable"),
                sigma2_series=(),
                mu_series=mu_series,
                mu_leading=(Q0, a),
                threshold=mpf(0),
                verdict=VERDICT_INCONCLUSIVE,
                reasons=tuple(reasons),
            )

        ta = TruncSeries(g1 + a_series.anchor, a_series.coeffs, prec).scale(a)
        tb = TruncSeries(g2 + b_series.anchor, b_series.coeffs, prec).scale(b)
        td = TruncSeries(2 * g1 + d_series.anchor, d_series.coeffs, prec).scale(a * a)

        offsets = [tb.anchor - ta.anchor, tb.anchor - td.anchor,
                   ta.anchor - td.anchor]
        if any(o.denominator != 1 for o in offsets):
            reasons.append("variance series exponents do not align on an "
                           "integer grid")
            return SufficiencyReport(
                condition1=cond1,
                condition2=ConditionTwo(False, None, None,
                                        "non-integer exponent grid"),
                sigma2_series=(),
                mu_series=ta,
                mu_leading=(g1, a),
                threshold=mpf(0),
                verdict=VERDICT_INCONCLUSIVE,
                reasons=tuple(reasons),
            )

        sigma2 = series_arith(series_arith(tb, ta, "add"), td, "sub")

        scale = max(
            [abs(c) for c in tb.coeffs] + [abs(c) for c in ta.coeffs]
            + [abs(c) for c in td.coeffs] + [mpf(1) * 0])
        if scale == 0:
            scale = mpf(1)
        expansion_tol = scale * mpf(10) ** (-(agreed // 2))
        ratio_tol = 10 * (abs(ratio_a.stability) * (1 + 2 * abs(a))
                          + abs(ratio_b.stability)) * max(scale, mpf(1))
        threshold = max(expansion_tol, ratio_tol)

        entries = []
        m = None
        leading = None
        for s, c in enumerate(sigma2.coeffs):
            exponent = sigma2.anchor - s
            if exponent < 1:
                break
            zeroed = abs(c) <= threshold
            entries.append((exponent, c, bool(zeroed)))
            if not zeroed and m is None:
                if abs(c) <= 10 * threshold:
                    raise CancellationAmbiguous(
                        f"coefficient {decimal_str(c, 5)} at exponent "
                        f"{exponent} is within a decade of the threshold "
                        f"{decimal_str(threshold, 3)}")
                m = exponent
                leading = c

        if m is None:
            cond2 = ConditionTwo(False, None, None,
                                 "no surviving term with exponent >= 1")
        elif m.denominator != 1:
            cond2 = ConditionTwo(False, m, leading,
                                 "surviving exponent is not an integer")
        elif leading <= 0:
            cond2 = ConditionTwo(False, m, leading,
                                 "surviving coefficient is not positive")
        else:
            cond2 = ConditionTwo(True, m, leading,
                                 "variance grows like a positive multiple "
                                 f"of n^{m}")

    if not cond1.satisfied:
        reasons.append("condition (1) unsatisfied: " + cond1.detail)
    if not cond2.satisfied:
        reasons.append("condition (2) unsatisfied: " + cond2.detail)
    if real_rooted is not True:
        reasons.append("real-rootedness not verified" if real_rooted is None
                       else "real-rootedness verification failed")
    if nonnegative is not True:
        reasons.append("nonnegativity not verified" if nonnegative is None
                       else "negative coefficients present")

    verdict = VERDICT_NORMAL if not reasons else VERDICT_INCONCLUSIVE
    return SufficiencyReport(
        condition1=cond1,
        condition2=cond2,
        sigma2_series=tuple(entries),
        mu_series=ta,
        mu_leading=(g1, a),
        threshold=threshold,
        verdict=verdict,
        reasons=tuple(reasons),
    )


# --- real-rootedness --------------------------------------------------------


@dataclass(frozen=True)
class RealRootedResult:
    bound: int
    first_failure: object  # int or None

    @property
    def all_verified(self) -> bool:
        return self.first_failure is None

    def describe(self) -> str:
        if self.all_verified:
            return f"all rows real-rooted for n <= {self.bound}"
        return f"row {self.first_failure} is not real-rooted"


def real_rooted_upto(triangle, n_max: int) -> RealRootedResult:
    """Verify by Sturm counting that each row polynomial up to n_max has
    as many real roots (with multiplicity) as its degree."""
    for n in range(n_max + 1):
        row = triangle.row(n)
        p = Poly(row)
        if p.is_zero:
            return RealRootedResult(n_max, n)
        if p.degree == 0:
            continue
        if real_root_count_with_multiplicity(p) != p.degree:
            return RealRootedResult(n_max, n)
    return RealRootedResult(n_max, None)


# --- empirical statistics ---------------------------------------------------


@dataclass(frozen=True)
class LimitStats:
    n: int
    kolmogorov: object  # mpf in [0, 1]
    llt_sup: object     # mpf >= 0


def _phi_pdf(x):
    return mpmath.exp(-x * x / 2) / mpmath.sqrt(2 * mpmath.pi)


def limit_stats(row, mu, sigma, prec: int = 128) -> LimitStats:
    """Distribution distances of a row against the Gaussian limit.

    ``kolmogorov`` is the sup over CDF jump points of the distance to the
    normal CDF evaluated on both sides of each jump.  ``llt_sup`` is the
    sup over cells of the distance between the sigma-scaled point mass
    and the normal density, evaluated at cell endpoints and at the mode,
    plus the density sup outside the covered range.
    """
    row = [Fraction(v) for v in row]
    total = sum(row, Q0)
    if total == 0:
        raise AllZeroRow("row has no nonzero entry")
    with workprec(prec):
        sig = mpf(sigma) if not isinstance(sigma, Fraction) else to_mpf(sigma, prec)
        if not sig > 0:
            raise ZeroVariance("sigma must be positive")
        mu_f = to_mpf(Fraction(mu), prec)
        n = len(row) - 1

        kolmo = mpf(0)
        cdf = Q0
        for k, v in enumerate(row):
            xk = (k - mu_f) / sig
            phi = mpmath.ncdf(xk)
            left = to_mpf(cdf, prec)
            cdf += v / total
            right = to_mpf(cdf, prec)
            kolmo = max(kolmo, abs(left - phi), abs(right - phi))

        llt = mpf(0)
        for k, v in enumerate(row):
            pk = to_mpf(v / total, prec) * sig
            x_lo = (k - mu_f) / sig
            x_hi = (k + 1 - mu_f) / sig
            cands = [abs(pk - _phi_pdf(x_lo)), abs(pk - _phi_pdf(x_hi))]
            if x_lo < 0 < x_hi:
                cands.append(abs(pk - _phi_pdf(mpf(0))))
            llt = max(llt, max(cands))
        x_left = (0 - mu_f) / sig
        x_right = (n + 1 - mu_f) / sig
        tail = max(_phi_pdf(x_left), _phi_pdf(x_right))
        llt = max(llt, tail)
        return LimitStats(n=n, kolmogorov=+kolmo, llt_sup=+llt)


def stats_csv(entries) -> str:
    """CSV table ``n,mu,sigma2,kolmogorov,llt_sup`` at 15 significant
    digits; ``entries`` holds (MomentEstimates, LimitStats) pairs."""
    lines = ["n,mu,sigma2,kolmogorov,llt_sup"]
    for moments, stats in entries:
        lines.append(",".join([
            str(moments.n),
            decimal_str(moments.mu, 15),
            decimal_str(moments.sigma2, 15),
            decimal_str(stats.kolmogorov, 15),
            decimal_str(stats.llt_sup, 15),
        ]))
    return "\n".join(lines) + "\n"
