"""Skew polynomials in the shift operator S over exact coefficient fields.

The commutation rule is ``S * c(n) = c(n+1) * S``.  Coefficients are either
rational functions of n (``RatFunc``) or rational functions of n and x
(``BiFrac``); both expose the same small protocol (arithmetic operators,
``is_zero``, ``shift``).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bivar import BiFrac, BiPoly
from .errors import DefinitionSyntaxError
from .linalg import nullspace_field, nullspace_poly_dict
from .polys import Poly, RatFunc, nonneg_integer_roots, poly_lcm

Q0 = Fraction(0)
Q1 = Fraction(1)


class OrePoly:
    """Operator ``sum_i c_i * S**i`` with coefficients in a common field."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        raise IndexError(i)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return OrePoly(out)

    def __sub__(self, other):
        return self + OrePoly([-c for c in other.coeffs])

    def __neg__(self):
        return OrePoly([-c for c in self.coeffs])

    def scale(self, factor):
        """Left multiplication by an order-0 coefficient."""
        return OrePoly([factor * c for c in self.coeffs])

    def __repr__(self):
        return f"OrePoly({list(self.coeffs)!r})"


def ore_mul(a: OrePoly, b: OrePoly) -> OrePoly:
    """Operator composition under ``S * c(n) = c(n+1) * S``."""
    if a.is_zero or b.is_zero:
        return OrePoly(())
    zero = (a.coeffs[0] - a.coeffs[0])
    out = [zero] * (a.order + b.order + 1)
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb.is_zero:
                continue
            out[i + j] = out[i + j] + ca * cb.shift(i)
    return OrePoly(out)


def ore_apply(op, terms, offset: int = 0):
    """Accessor ``n -> sum_i c_i(n) * t(n+i)`` for an operator over RatFunc.

    ``op`` may be an OrePoly over RatFunc or a Recurrence.  ``terms`` is a
    callable or an indexable sequence (indexed from ``offset``).
    """
    coeffs = _ratfunc_coeffs(op)

    if callable(terms):
        get = terms
    else:
        seq = list(terms)

        def get(n):
            return seq[n - offset]

    def accessor(n):
        total = Q0
        for i, c in enumerate(coeffs):
            total += c(n) * Fraction(get(n + i))
        return total

    return accessor


def _ratfunc_coeffs(op):
    if isinstance(op, Recurrence):
        return [RatFunc(p) for p in op.coeffs]
    return list(op.coeffs)


def lclm(l1: OrePoly, l2: OrePoly):
    """Least common left multiple via a bounded linear-algebra ansatz.

    Returns ``(M, U, V)`` with ``M = U*L1 = V*L2`` exactly.  The target
    order ascends from ``max(d1, d2)``; the bound ``d1 + d2`` always
    admits a solution.  Ties among nullspace vectors are broken by the
    total degree of the resulting leading coefficient, then by a fixed
    deterministic ordering.
    """
    if l1.is_zero or l2.is_zero:
        raise ValueError("lclm of a zero operator")
    d1, d2 = l1.order, l2.order
    sample = l1.coeffs[0]
    zero = sample - sample
    one = _field_one(sample)

    for m in range(max(d1, d2), d1 + d2 + 1):
        nu, nv = m - d1 + 1, m - d2 + 1
        rows = []
        for t in range(m + 1):
            row = []
            for i in range(nu):
                if 0 <= t - i <= d1:
                    row.append(l1.coeffs[t - i].shift(i))
                else:
                    row.append(zero)
            for j in range(nv):
                if 0 <= t - j <= d2:
                    row.append(zero - l2.coeffs[t - j].shift(j))
                else:
                    row.append(zero)
            rows.append(row)
        basis = _lclm_nullspace(rows, zero, one)
        candidates = []
        for idx, vec in enumerate(basis):
            u = OrePoly(vec[:nu])
            v = OrePoly(vec[nu:])
            if u.is_zero or v.is_zero:
                continue
            mm = ore_mul(u, l1)
            if mm.is_zero:
                continue
            key = (mm.order, _coeff_total_degree(mm.coeffs[-1]), idx)
            candidates.append((key, mm, u, v))
        if candidates:
            candidates.sort(key=lambda c: c[0])
            _, mm, u, v = candidates[0]
            mm, u, v = _normalize_triple(mm, u, v)
            return mm, u, v
    raise AssertionError("lclm ansatz bound exhausted")  # unreachable


def _field_one(sample):
    if isinstance(sample, RatFunc):
        return RatFunc.one()
    if isinstance(sample, BiFrac):
        return BiFrac.one()
    raise TypeError(f"unsupported coefficient type {type(sample).__name__}")


def _lclm_nullspace(rows, zero, one):
    """Nullspace dispatch for the lclm ansatz system.

    BiFrac matrices are cleared row-wise to integer bivariate polynomials
    and eliminated fraction-free (field elimination without gcd reduction
    doubles degrees per step); RatFunc matrices reduce fine over the
    field directly.
    """
    if not isinstance(one, BiFrac):
        return nullspace_field(rows, zero, one)

    int_rows = []
    for row in rows:
        den = BiPoly.const(1)
        seen = []
        for e in row:
            if e.den != BiPoly.const(1) and not any(e.den == s for s in seen):
                seen.append(e.den)
                den = den * e.den
        factor = BiFrac(den)
        polys = []
        for e in row:
            p = e * factor
            if not p.is_polynomial:
                if p.den.total_degree() == 0:
                    polys.append(p.num * (Q1 / p.den.terms[(0, 0)]))
                else:
                    raise ValueError("row clearing left a denominator")
            else:
                polys.append(p.num)
        lcm_den = 1
        for p in polys:
            for c in p.terms.values():
                lcm_den = lcm_den * c.denominator // math.gcd(
                    lcm_den, c.denominator)
        int_rows.append([
            {k: int(c * lcm_den) for k, c in p.terms.items()} for p in polys
        ])
    basis = nullspace_poly_dict(int_rows)
    out = []
    for vec in basis:
        out.append(tuple(
            BiFrac(BiPoly({k: Fraction(v) for k, v in ent.items()}))
            for ent in vec))
    return out


def _coeff_total_degree(c):
    return c.total_degree()


def _clearing_factor(coeffs):
    """Order-0 factor turning every coefficient into a content-free
    polynomial with the leading coefficient sign positive."""
    sample = coeffs[0]
    if isinstance(sample, RatFunc):
        den = Poly.const(1)
        for c in coeffs:
            den = poly_lcm(den, c.den)
        cleared = [c.num * (den // c.den) for c in coeffs]
        content = Q0
        for p in cleared:
            c = p.content()
            content = c if content == 0 else Fraction(
                math.gcd(content.numerator * c.denominator,
                         c.numerator * content.denominator),
                content.denominator * c.denominator)
        if content == 0:
            content = Q1
        lead = next(p for p in reversed(cleared) if not p.is_zero).leading
        sign = -1 if lead < 0 else 1
        return RatFunc(den * (Q1 / (content * sign)))
    if isinstance(sample, BiFrac):
        den = BiPoly.const(1)
        seen = []
        for c in coeffs:
            if not any(c.den == s for s in seen):
                seen.append(c.den)
                den = den * c.den
        factor = BiFrac(den)
        cleared = [factor * c for c in coeffs]
        content = Q0
        for c in cleared:
            cc = (c.num.content() / c.den.content())
            content = cc if content == 0 else Fraction(
                math.gcd(content.numerator * cc.denominator,
                         cc.numerator * content.denominator),
                content.denominator * cc.denominator)
        if content == 0:
            content = Q1
        lead_src = next(c for c in reversed(cleared) if not c.is_zero)
        lead = lead_src.num.leading_coeff_lex() / lead_src.den.leading_coeff_lex()
        sign = -1 if lead < 0 else 1
        return factor * BiFrac(Fraction(1, 1) / (content * sign))
    raise TypeError(type(sample).__name__)


def _normalize_triple(m: OrePoly, u: OrePoly, v: OrePoly):
    """Scale (M, U, V) by one common left factor so M has cleared,
    content-free polynomial coefficients with positive leading sign.
    The identity M = U*L1 = V*L2 is preserved."""
    g = _clearing_factor(m.coeffs)
    return m.scale(g), u.scale(g), v.scale(g)


def normalize_operator(op: OrePoly) -> OrePoly:
    """Canonical standalone form: cleared denominators, integer content
    removed, positive leading sign."""
    if op.is_zero:
        return op
    return op.scale(_clearing_factor(op.coeffs))


def derivative_closure(l1: OrePoly) -> OrePoly:
    """Annihilator of the x-derivative of any sequence annihilated by l1.

    With ``L2`` the coefficient-wise x-derivative of ``L1`` and
    ``(M, U, V) = lclm(L1, L2)``, the operator ``V*L1`` annihilates the
    derivative sequence.  When L1 has no x dependence it already
    annihilates the derivative and is returned unchanged.
    """
    l2 = OrePoly([c.diff_x() for c in l1.coeffs])
    if l2.is_zero:
        return l1
    _, _, v = lclm(l1, l2)
    return normalize_operator(ore_mul(v, l1))


class Recurrence:
    """A recurrence operator with polynomial coefficients plus the initial
    values needed to determine a concrete sequence.

    ``coeffs[i]`` is the Poly multiplying ``t(n + i)``; the relation
    ``sum_i coeffs[i](n) * t(n+i) = 0`` holds for every ``n >= valid_from``.
    Initial values cover the startup window and every index the recurrence
    cannot determine because the leading coefficient vanishes there.
    """

    __slots__ = ("coeffs", "initial_values", "valid_from")

    def __init__(self, coeffs, initial_values=(), valid_from: int = 1):
        polys = [c if isinstance(c, Poly) else Poly.const(c) for c in coeffs]
        while polys and polys[-1].is_zero:
            polys.pop()
        if not polys:
            raise ValueError("zero operator")
        self.coeffs = tuple(polys)
        self.initial_values = tuple(Fraction(v) for v in initial_values)
        self.valid_from = valid_from

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.coeffs)

    @property
    def leading(self) -> Poly:
        return self.coeffs[-1]

    def needed_initial_count(self) -> int:
        """Length of the initial-value prefix needed to unroll the sequence.

        Indices below ``valid_from + order`` are never determined by the
        relation, and neither is ``r + order`` for any root ``r`` of the
        leading coefficient at an applicable index.
        """
        base = self.valid_from + self.order
        bad = [r for r in nonneg_integer_roots(self.leading) if r >= self.valid_from]
        if bad:
            return max(base, max(bad) + self.order + 1)
        return base

    def coefficient_vector(self):
        return self.coeffs

    def apply_at(self, terms, n: int) -> Fraction:
        """Exact value of ``sum_i p_i(n) * t(n+i)`` from an indexable list."""
        total = Q0
        for i, p in enumerate(self.coeffs):
            total += p(n) * Fraction(terms[n + i])
        return total

    def unroll(self, count: int):
        """First ``count`` terms of the sequence fixed by the initial values."""
        vals = [Fraction(v) for v in self.initial_values]
        d = self.order
        if len(vals) < max(d, 1):
            raise ValueError("not enough initial values")
        while len(vals) < count:
            n = len(vals) - d
            if n < self.valid_from:
                raise ValueError("initial values do not cover startup window")
            lead = self.leading(n)
            if lead == 0:
                raise ValueError(f"leading coefficient vanishes at n = {n}; "
                                 "value must be supplied as an initial value")
            s = Q0
            for i in range(d):
                s += self.coeffs[i](n) * vals[n + i]
            vals.append(-s / lead)
        return vals[:count]

    def operator_text(self) -> str:
        return operator_text(self.coeffs)

    def to_json_dict(self):
        from .bigfloat import fraction_str

        return {
            "operator": self.operator_text(),
            "initial_values": [fraction_str(v) for v in self.initial_values],
            "valid_from": self.valid_from,
            "order": self.order,
            "degree": self.degree,
        }

    @classmethod
    def from_json_dict(cls, d):
        coeffs = parse_operator_text(d["operator"])
        vals = [Fraction(v) for v in d.get("initial_values", [])]
        return cls(coeffs, vals, int(d.get("valid_from", 1)))

    def __repr__(self):
        return f"Recurrence({self.operator_text()!r})"


def operator_text(coeffs) -> str:
    """Render ``sum_i (poly_i) * S^i`` with expanded canonical polynomials,
    highest shift first."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if isinstance(c, Poly):
            if c.is_zero:
                continue
            body = c.text()
        elif isinstance(c, BiPoly):
            if c.is_zero:
                continue
            body = c.text()
        elif isinstance(c, RatFunc):
            if c.is_zero:
                continue
            if c.is_polynomial:
                body = c.num.text()
            else:
                body = f"({c.num.text()})/({c.den.text()})"
        elif isinstance(c, BiFrac):
            if c.is_zero:
                continue
            if c.is_polynomial:
                body = c.num.text()
            else:
                body = f"({c.num.text()})/({c.den.text()})"
        else:
            raise TypeError(type(c).__name__)
        if i == 0:
            parts.append(f"({body})")
        elif i == 1:
            parts.append(f"({body})*S")
        else:
            parts.append(f"({body})*S^{i}")
    return " + ".join(parts) if parts else "(0)"


# --- text form parsing -----------------------------------------------------
#
# The serialized form keeps coefficient polynomials to the left of the S
# power inside each product, so parsing with commutative arithmetic over
# the three symbols n, x, S reconstructs the coefficients faithfully.

_OPER_TOKENS = ("INT", "IDENT", "OP", "END")


def _tokenize_operator(s: str):
    toks = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            toks.append(("INT", s[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(s) and (s[j].isalnum() or s[j] == "_"):
                j += 1
            toks.append(("IDENT", s[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append(("OP", ch, i))
            i += 1
            continue
        raise DefinitionSyntaxError(f"unexpected character {ch!r}", 1, i + 1)
    toks.append(("END", "", len(s)))
    return toks


class _TriPoly(dict):
    """{(deg_n, deg_x, deg_S): Fraction} helper for operator parsing."""

    @staticmethod
    def const(c):
        return _TriPoly({(0, 0, 0): Fraction(c)}) if c else _TriPoly()

    def add(self, other):
        out = _TriPoly(self)
        for k, v in other.items():
            nv = out.get(k, Q0) + v
            if nv:
                out[k] = nv
            elif k in out:
                del out[k]
        return out

    def neg(self):
        return _TriPoly({k: -v for k, v in self.items()})

    def mul(self, other):
        out = _TriPoly()
        for (a1, b1, c1), v1 in self.items():
            for (a2, b2, c2), v2 in other.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                nv = out.get(k, Q0) + v1 * v2
                if nv:
                    out[k] = nv
                elif k in out:
                    del out[k]
        return out

    def power(self, e: int):
        out = _TriPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out.mul(base)
            base = base.mul(base)
            e >>= 1
        return out

    def is_const(self):
        return all(k == (0, 0, 0) for k in self)


class _OperatorParser:
    def __init__(self, s):
        self.toks = _tokenize_operator(s)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op):
        kind, val, at = self.next()
        if kind != "OP" or val != op:
            raise DefinitionSyntaxError(f"expected {op!r}, found {val!r}", 1, at + 1)

    def parse(self):
        v = self.expr()
        kind, val, at = self.peek()
        if kind != "END":
            raise DefinitionSyntaxError(f"unexpected trailing {val!r}", 1, at + 1)
        return v

    def expr(self):
        kind, val, _ = self.peek()
        neg = False
        if kind == "OP" and val in "+-":
            self.next()
            neg = val == "-"
        v = self.term()
        if neg:
            v = v.neg()
        while True:
            kind, val, _ = self.peek()
            if kind == "OP" and val in "+-":
                self.next()
                rhs = self.term()
                v = v.add(rhs.neg() if val == "-" else rhs)
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            kind, val, at = self.peek()
            if kind == "OP" and val == "*":
                self.next()
                v = v.mul(self.factor())
            elif kind == "OP" and val == "/":
                self.next()
                d = self.factor()
                if not d.is_const() or not d:
                    raise DefinitionSyntaxError(
                        "division only by nonzero constants in operator text",
                        1, at + 1)
                inv = Q1 / d[(0, 0, 0)]
                v = v.mul(_TriPoly.const(inv))
            else:
                return v

    def factor(self):
        v = self.atom()
        kind, val, at = self.peek()
        if kind == "OP" and val == "^":
            self.next()
            kind, ev, at2 = self.next()
            if kind != "INT":
                raise DefinitionSyntaxError("exponent must be an integer literal",
                                            1, at2 + 1)
            v = v.power(int(ev))
        return v

    def atom(self):
        kind, val, at = self.next()
        if kind == "INT":
            return _TriPoly.const(int(val))
        if kind == "IDENT":
            if val == "n":
                return _TriPoly({(1, 0, 0): Q1})
            if val == "x":
                return _TriPoly({(0, 1, 0): Q1})
            if val == "S":
                return _TriPoly({(0, 0, 1): Q1})
            raise DefinitionSyntaxError(f"unknown symbol {val!r}", 1, at + 1)
        if kind == "OP" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise DefinitionSyntaxError(f"unexpected token {val!r}", 1, at + 1)


def parse_operator_text(s: str):
    """Parse the serialized operator form back into coefficient Polys.

    Returns a list of Poly in n (index = shift power).  Raises if the
    text mentions x; use :func:`parse_operator_text_bivar` for operators
    over n and x.
    """
    tri = _OperatorParser(s).parse()
    if any(j > 0 for (_, j, _) in tri):
        raise DefinitionSyntaxError("operator text contains x; expected n only", 1, 1)
    order = max((k for (_, _, k) in tri), default=0)
    out = []
    for sdeg in range(order + 1):
        coeffs = {}
        for (i, _, k), c in tri.items():
            if k == sdeg:
                coeffs[i] = c
        if coeffs:
            lst = [Q0] * (max(coeffs) + 1)
            for i, c in coeffs.items():
                lst[i] = c
            out.append(Poly(lst))
        else:
            out.append(Poly())
    return out


def parse_operator_text_bivar(s: str):
    """Parse operator text over n and x into a list of BiPoly coefficients."""
    tri = _OperatorParser(s).parse()
    order = max((k for (_, _, k) in tri), default=0)
    out = []
    for sdeg in range(order + 1):
        terms = {(i, j): c for (i, j, k), c in tri.items() if k == sdeg}
        out.append(BiPoly(terms))
    return out


def ore_from_bivar_text(s: str) -> OrePoly:
    return OrePoly([BiFrac(b) for b in parse_operator_text_bivar(s)])
