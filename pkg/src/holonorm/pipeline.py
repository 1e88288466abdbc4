"""Full analysis pipeline: rows, guessed recurrences, asymptotic
expansions, ratio limits, the sufficiency verdict, real-rootedness, and
the empirical statistics table, with machine-readable reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import workprec

from .asym import estimate_ratio, expand_asymptotics
from .bigfloat import decimal_str, fraction_str, to_mpf
from .errors import (
    AllZeroRow,
    HolonormError,
    RecurrenceNotFound,
    Unsupported,
    UnstableExtrapolation,
    ZeroVariance,
)
from .guess import GuessConfig, guess_recurrence, verify_recurrence
from .normality import (
    CancellationAmbiguous,
    VERDICT_INCONCLUSIVE,
    VERDICT_NORMAL,
    exact_moments,
    limit_stats,
    real_rooted_upto,
    stats_csv,
    sufficiency_check,
)
from .seqdef import CoeffTriangle, eval_rows

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisConfig:
    n_max_terms: int = 200
    max_order: int = 4
    max_degree: int = 4
    verify_count: int = 12
    series_order: int = 6
    precision_bits: int = 256
    richardson_depth: int = 6
    sturm_bound: int = 40
    stats_n: tuple = (25, 50, 100, 200)
    out_format: str = "text"

    def __post_init__(self):
        for name in ("n_max_terms", "max_order", "max_degree", "verify_count",
                     "series_order", "precision_bits", "richardson_depth",
                     "sturm_bound"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if any(n > self.n_max_terms for n in self.stats_n):
            raise ValueError("stats_n entries must not exceed n_max_terms")

    def guess_config(self) -> GuessConfig:
        return GuessConfig(self.max_order, self.max_degree, self.verify_count)


@dataclass
class AnalysisReport:
    sequence: dict
    recurrences: list = field(default_factory=list)
    asymptotics: list = field(default_factory=list)
    ratios: dict = field(default_factory=dict)
    sufficiency: dict = field(default_factory=dict)
    real_rooted: dict = field(default_factory=dict)
    stats: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    verdict: str = VERDICT_INCONCLUSIVE
    verdict_phrase: str = ""
    stats_table: str = ""

    def to_json(self) -> str:
        doc = {
            "schema": SCHEMA_VERSION,
            "sequence": self.sequence,
            "recurrences": self.recurrences,
            "asymptotics": self.asymptotics,
            "ratios": self.ratios,
            "theorem_check": self.sufficiency,
            "real_rooted_upto": self.real_rooted,
            "stats": self.stats,
            "warnings": self.warnings,
            "verdict": self.verdict,
            "verdict_phrase": self.verdict_phrase,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        head = [
            f"# sequence: {self.sequence.get('name', '')}",
            f"# verdict: {self.verdict}",
        ]
        return "\n".join(head) + "\n" + (self.stats_table or
                                         "n,mu,sigma2,kolmogorov,llt_sup\n")

    def to_text(self) -> str:
        lines = [f"sequence: {self.sequence.get('name', '')}"]
        if self.sequence.get("definition"):
            lines.append(f"definition: a(n,k) = {self.sequence['definition']}")
        lines.append(f"verdict: {self.verdict}")
        if self.verdict_phrase:
            lines.append(f"  {self.verdict_phrase}")
        for rec in self.recurrences:
            lines.append(f"recurrence[{rec['target']}]: {rec['operator']}"
                         f"  ({rec['provenance']})")
        for form in self.asymptotics:
            lines.append(
                f"asymptotics[{form['target']}]: lambda = {form['lambda']}, "
                f"r = {form['r']}, b = [{', '.join(form['b'])}]")
        if self.ratios:
            lines.append(f"ratio a = {self.ratios['a']['value']}, "
                         f"b = {self.ratios['b']['value']}  "
                         f"({self.ratios['provenance']})")
        suff = self.sufficiency
        if suff:
            lines.append(
                f"variance series: leading coefficient {suff.get('leading')} "
                f"at exponent m = {suff.get('m')}")
            mu = suff.get("mu_leading")
            if mu:
                lines.append(f"mean: ~ {mu['coefficient']} * "
                             f"n^{mu['exponent']}")
        if self.real_rooted:
            lines.append(f"real-rootedness: {self.real_rooted.get('summary')}")
        if self.stats_table:
            lines.append("statistics:")
            for ln in self.stats_table.strip().splitlines():
                lines.append("  " + ln)
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


_TARGETS = ("f", "f1", "f2")


def analyze(triangle: CoeffTriangle, cfg: AnalysisConfig = AnalysisConfig()) -> AnalysisReport:
    """Run the full analysis; stage failures downgrade the verdict to
    inconclusive and are recorded as typed warnings.  Exact stages never
    fall back to floating point."""
    report = AnalysisReport(sequence={
        "name": triangle.name,
        "definition": triangle.expr_text,
        "kind": triangle.kind,
        "symmetric": triangle.symmetric,
        "experimental": triangle.experimental,
    })
    warnings = report.warnings

    rows = None
    nonnegative = None
    if triangle.has_rows:
        try:
            rows = eval_rows(triangle, cfg.n_max_terms)
            nonnegative = rows.first_negative is None
            if not nonnegative:
                warnings.append(
                    f"NegativeCoefficient: a{rows.first_negative} < 0")
        except HolonormError as exc:
            warnings.append(f"{type(exc).__name__}: {exc}")
    else:
        warnings.append("RowsUnavailable: recurrence-defined triangle; "
                        "row-based stages skipped")

    # recurrences for the three term vectors
    recurrences = [None, None, None]
    if triangle.recurrences:
        recurrences = list(triangle.recurrences)
        for target, rec in zip(_TARGETS, recurrences):
            d = rec.to_json_dict()
            d["target"] = target
            d["provenance"] = "supplied"
            report.recurrences.append(d)
    elif rows is not None:
        vectors = (rows.f0, rows.f1, rows.f2)
        gcfg = cfg.guess_config()
        guess_window = min(len(rows.f0), max(gcfg.required_terms(), 60))
        for i, (target, vec) in enumerate(zip(_TARGETS, vectors)):
            try:
                rec = guess_recurrence(vec[:guess_window], gcfg)
                ok, bad = verify_recurrence(rec, vec)
                if not ok:
                    warnings.append(
                        f"VerificationFailed[{target}]: index {bad}")
                    continue
                recurrences[i] = rec
                d = rec.to_json_dict()
                d["target"] = target
                d["provenance"] = (
                    f"guessed (verified on {len(vec) - rec.order - 1} terms)")
                report.recurrences.append(d)
            except (RecurrenceNotFound, ValueError) as exc:
                warnings.append(f"RecurrenceNotFound[{target}]: {exc}")

    # asymptotic expansions, with one doubled-precision retry on
    # cancellation-ambiguous variance scans
    suff = None
    forms = None
    ratios = (None, None)
    for prec in (cfg.precision_bits, 2 * cfg.precision_bits):
        forms, ratios, suff, fatal = _expansion_stage(
            recurrences, rows, triangle, cfg, prec, warnings)
        if suff is not None or fatal:
            break
        warnings.append("PrecisionEscalated: variance scan retried at "
                        f"{2 * cfg.precision_bits} bits")

    if forms:
        for target, form in zip(_TARGETS, forms):
            d = form.to_json_dict()
            d["target"] = target
            d["provenance"] = "computed (paired precision)"
            report.asymptotics.append(d)
    if ratios[0] is not None and ratios[1] is not None:
        report.ratios = {
            "a": ratios[0].to_json_dict(),
            "b": ratios[1].to_json_dict(),
            "provenance": f"extrapolated (depth {cfg.richardson_depth})",
        }

    # real-rootedness up to the Sturm bound
    real_rooted = None
    if triangle.has_rows:
        rr = real_rooted_upto(triangle, cfg.sturm_bound)
        real_rooted = rr.all_verified
        report.real_rooted = {
            "bound": rr.bound,
            "all_verified": rr.all_verified,
            "first_failure": rr.first_failure,
            "summary": rr.describe(),
        }
        if not rr.all_verified:
            warnings.append(f"RealRootednessFailed: row {rr.first_failure}")

    if suff is not None:
        final = sufficiency_check(forms, ratios[0], ratios[1],
                                  real_rooted=real_rooted,
                                  nonnegative=nonnegative)
        report.sufficiency = final.to_json_dict()
        report.verdict = final.verdict
        if final.verdict == VERDICT_NORMAL:
            nverified = (len(rows.f0) - 1) if rows is not None else 0
            report.verdict_phrase = (
                "asymptotically normal by the ratio-sufficiency check; "
                f"real-rootedness verified for n <= {cfg.sturm_bound} "
                f"(guessed recurrences verified on {nverified} terms)")
        else:
            report.verdict_phrase = "; ".join(final.reasons)
    else:
        report.verdict = VERDICT_INCONCLUSIVE
        report.verdict_phrase = "; ".join(
            w for w in warnings if not w.startswith("Precision"))

    # empirical statistics table
    if rows is not None and cfg.stats_n:
        entries = []
        for n in cfg.stats_n:
            try:
                row = rows.rows[n]
                moments = exact_moments(row, n)
                if moments.sigma2 <= 0:
                    raise ZeroVariance(f"sigma2(n={n}) = {moments.sigma2}")
                with workprec(cfg.precision_bits):
                    sigma = mpmath.sqrt(to_mpf(moments.sigma2,
                                                cfg.precision_bits))
                st = limit_stats(row, moments.mu, sigma,
                                 prec=max(128, cfg.precision_bits // 2))
                entries.append((moments, st))
                report.stats.append({
                    "n": n,
                    "mu": fraction_str(moments.mu),
                    "sigma2": fraction_str(moments.sigma2),
                    "kolmogorov": decimal_str(st.kolmogorov, 15),
                    "llt_sup": decimal_str(st.llt_sup, 15),
                    "provenance": "exact moments, numeric distances",
                })
            except (AllZeroRow, ZeroVariance) as exc:
                warnings.append(f"{type(exc).__name__}: {exc}")
                report.verdict = VERDICT_INCONCLUSIVE
        if entries:
            report.stats_table = stats_csv(entries)

    return report


def _expansion_stage(recurrences, rows, triangle, cfg, prec, warnings):
    """Expansions + ratios + sufficiency at one precision.

    Returns (forms, (a, b), suff_or_None, fatal); ``suff`` is None with
    ``fatal=False`` only for a cancellation-ambiguous scan (retryable).
    """
    if any(r is None for r in recurrences):
        return None, (None, None), None, True
    forms = []
    for target, rec in zip(_TARGETS, recurrences):
        try:
            forms.append(expand_asymptotics(rec, M=cfg.series_order, prec=prec))
        except (Unsupported, HolonormError) as exc:
            warnings.append(f"{type(exc).__name__}[{target}]: {exc}")
            return None, (None, None), None, True

    if not all(f.r_is_exact for f in forms):
        warnings.append("NonRationalExponent: growth exponent kept numeric")
        return forms, (None, None), None, True
    r0, r1, r2 = (f.r for f in forms)
    if not (r0 < r1 < r2):
        warnings.append(f"ExponentOrder: r values {r0}, {r1}, {r2} are not "
                        "strictly increasing")
        return forms, (None, None), None, True

    if rows is None:
        # recurrence-defined triangles provide term vectors by unrolling
        try:
            f0 = recurrences[0].unroll(cfg.n_max_terms + 1)
            f1 = recurrences[1].unroll(cfg.n_max_terms + 1)
            f2 = recurrences[2].unroll(cfg.n_max_terms + 1)
        except ValueError as exc:
            warnings.append(f"UnrollFailed: {exc}")
            return forms, (None, None), None, True
    else:
        f0, f1, f2 = rows.f0, rows.f1, rows.f2

    try:
        a = estimate_ratio(f1, f0, r1 - r0, depth=cfg.richardson_depth,
                           prec=prec)
        b = estimate_ratio(f2, f0, r2 - r0, depth=cfg.richardson_depth,
                           prec=prec)
    except (UnstableExtrapolation, ValueError) as exc:
        warnings.append(f"{type(exc).__name__}: {exc}")
        return forms, (None, None), None, True

    try:
        suff = sufficiency_check(forms, a, b)
        return forms, (a, b), suff, False
    except CancellationAmbiguous as exc:
        warnings.append(f"CancellationAmbiguous: {exc}")
        return forms, (a, b), None, False
