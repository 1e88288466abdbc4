"""Recurrence discovery from exact term sequences.

Candidate operators come from nullspaces of linear systems indexed by
(order, degree) cells, searched in lexicographic order with order first.
A candidate is accepted only if it annihilates every supplied term,
including a held-out tail, so returned recurrences are empirically
certified rather than proved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RecurrenceNotFound
from .linalg import normalize_rational_vector, nullspace_ff
from .ore import Recurrence
from .polys import Poly

Q0 = Fraction(0)


@dataclass(frozen=True)
class GuessConfig:
    max_order: int = 4
    max_degree: int = 4
    verify_count: int = 12

    def __post_init__(self):
        if self.max_order < 1 or self.max_degree < 0 or self.verify_count < 1:
            raise ValueError("GuessConfig fields must be positive")

    def required_terms(self) -> int:
        return ((self.max_order + 1) * (self.max_degree + 1)
                + self.max_order + self.verify_count)


# extra equations beyond the unknown count; keeps spurious fits rare while
# bounding the elimination cost independently of the term-list length
_ROW_MARGIN = 16


def guess_recurrence(terms, cfg: GuessConfig = GuessConfig()) -> Recurrence:
    """Minimal (order, degree) recurrence annihilating all supplied terms.

    Terms are exact rationals indexed from n = 0.  The linear systems use
    indices from n = 1 so a vanishing coefficient at n = 0 cannot leak in.
    Raises :class:`RecurrenceNotFound` when nothing inside the bounds
    survives verification.
    """
    terms = [Fraction(t) for t in terms]
    if len(terms) < cfg.required_terms():
        raise ValueError(
            f"need at least {cfg.required_terms()} terms, got {len(terms)}")

    for order in range(1, cfg.max_order + 1):
        for degree in range(0, cfg.max_degree + 1):
            rec = _try_cell(terms, order, degree, cfg)
            if rec is not None:
                return rec
    raise RecurrenceNotFound(
        f"no recurrence with order <= {cfg.max_order} and degree <= "
        f"{cfg.max_degree} annihilates the supplied terms")


def _try_cell(terms, order, degree, cfg):
    unknowns = (order + 1) * (degree + 1)
    max_n = len(terms) - 1 - order          # largest n with a full window
    train_max = max_n - cfg.verify_count
    train_max = min(train_max, unknowns + _ROW_MARGIN)
    if train_max < unknowns - order:        # underdetermined beyond hope
        return None

    rows = []
    for n in range(1, train_max + 1):
        row = []
        npow = [Fraction(n) ** j for j in range(degree + 1)]
        for i in range(order + 1):
            t = terms[n + i]
            for j in range(degree + 1):
                row.append(npow[j] * t)
        rows.append(row)

    basis = nullspace_ff(rows)
    best = None
    for idx, vec in enumerate(basis):
        polys = []
        for i in range(order + 1):
            polys.append(Poly(vec[i * (degree + 1):(i + 1) * (degree + 1)]))
        while polys and polys[-1].is_zero:
            polys.pop()
        if len(polys) <= 1 and (not polys or polys[0].is_zero):
            continue
        cand = _normalize_polys(polys)
        ok, _ = _verify_polys(cand, terms)
        if not ok:
            continue
        eff_order = len(cand) - 1
        eff_degree = max(p.degree for p in cand)
        key = (eff_order, eff_degree, tuple(t for p in cand for t in p.coeffs), idx)
        if best is None or key < best[0]:
            best = (key, cand)
    if best is None:
        return None
    cand = best[1]
    return _build_recurrence(cand, terms)


def _normalize_polys(polys):
    flat = [c for p in polys for c in p.coeffs]
    normalized = normalize_rational_vector(flat)
    out = []
    pos = 0
    for p in polys:
        k = len(p.coeffs)
        out.append(Poly(normalized[pos:pos + k]))
        pos += k
    lead = out[-1].leading
    if lead < 0:
        out = [-p for p in out]
    return out


def _verify_polys(polys, terms, start: int = 1):
    order = len(polys) - 1
    for n in range(start, len(terms) - order):
        total = Q0
        for i, p in enumerate(polys):
            total += p(n) * terms[n + i]
        if total != 0:
            return False, n
    return True, None


def _build_recurrence(polys, terms):
    rec = Recurrence(polys, (), valid_from=1)
    need = rec.needed_initial_count()
    need = min(max(need, rec.order + 1), len(terms))
    return Recurrence(polys, terms[:need], valid_from=1)


def verify_recurrence(rec: Recurrence, terms):
    """Check exact annihilation on every applicable index.

    Returns ``(True, None)`` or ``(False, first_failing_index)``.  Terms
    must cover at least one full window of the recurrence.
    """
    terms = [Fraction(t) for t in terms]
    if len(terms) < rec.order + 1 + rec.valid_from:
        raise ValueError("terms do not cover the recurrence window")
    return _verify_polys(list(rec.coeffs), terms, start=rec.valid_from)
