"""Sparse bivariate polynomials in (n, x) and their quotients.

Quotients are kept in a light normal form only: integer content removed
from numerator and denominator and the denominator's leading coefficient
(lex order on (n, x) exponents) positive.  Equality is decided by cross
multiplication, so the lack of a canonical form is harmless.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polys import Poly, RatFunc

Q0 = Fraction(0)
Q1 = Fraction(1)


def _as_q(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


class BiPoly:
    """Polynomial in n and x: ``terms[(i, j)]`` multiplies ``n**i * x**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for (i, j), c in terms.items():
                c = _as_q(c)
                if c != 0:
                    t[(int(i), int(j))] = c
        self.terms = t

    @classmethod
    def const(cls, c):
        return cls({(0, 0): _as_q(c)})

    @classmethod
    def n(cls):
        return cls({(1, 0): Q1})

    @classmethod
    def x(cls):
        return cls({(0, 1): Q1})

    @classmethod
    def from_poly_n(cls, p: Poly):
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Q0) + c
        return BiPoly(t)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_q(other)
            return BiPoly({k: v * c for k, v in self.terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        t = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, Q0) + c1 * c2
        return BiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = BiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Exact quotient under lex ordering; raises when not divisible.

        Used by fraction-free elimination where divisibility is
        guaranteed by the Sylvester identity.
        """
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return BiPoly()
        rem = dict(self.terms)
        out = {}
        lt = max(other.terms)
        lc = other.terms[lt]
        while rem:
            m = max(rem)
            qi, qj = m[0] - lt[0], m[1] - lt[1]
            if qi < 0 or qj < 0:
                raise ValueError("inexact bivariate division")
            c = rem[m] / lc
            out[(qi, qj)] = c
            for (i, j), oc in other.terms.items():
                k = (i + qi, j + qj)
                nv = rem.get(k, Q0) - c * oc
                if nv:
                    rem[k] = nv
                elif k in rem:
                    del rem[k]
        return BiPoly(out)

    def degree_n(self):
        return max((i for i, _ in self.terms), default=-1)

    def degree_x(self):
        return max((j for _, j in self.terms), default=-1)

    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def leading_coeff_lex(self) -> Fraction:
        """Coefficient of the lex-largest monomial (n before x)."""
        if self.is_zero:
            return Q0
        return self.terms[max(self.terms)]

    def content(self) -> Fraction:
        if self.is_zero:
            return Q1
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def diff_x(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j > 0})

    def shift_n(self, k: int) -> "BiPoly":
        """Substitution n -> n + k."""
        if k == 0 or self.is_zero:
            return self
        t = {}
        for (i, j), c in self.terms.items():
            for m in range(i + 1):
                t[(m, j)] = t.get((m, j), Q0) + c * math.comb(i, m) * Fraction(k) ** (i - m)
        return BiPoly(t)

    def subst_x(self, xval) -> Poly:
        """Specialize x to a rational, producing a Poly in n."""
        xval = _as_q(xval)
        coeffs = {}
        for (i, j), c in self.terms.items():
            coeffs[i] = coeffs.get(i, Q0) + c * xval ** j
        if not coeffs:
            return Poly()
        out = [Q0] * (max(coeffs) + 1)
        for i, c in coeffs.items():
            out[i] = c
        return Poly(out)

    def eval(self, n, x) -> Fraction:
        n, x = _as_q(n), _as_q(x)
        return sum((c * n ** i * x ** j for (i, j), c in self.terms.items()), Q0)

    def text(self) -> str:
        """Canonical expanded form, lex-descending monomials."""
        if self.is_zero:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            c = self.terms[(i, j)]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            if i == 1:
                factors.append("n")
            elif i > 1:
                factors.append(f"n^{i}")
            if j == 1:
                factors.append("x")
            elif j > 1:
                factors.append(f"x^{j}")
            if not factors:
                body = _q_text(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_q_text(mag)] + factors)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"BiPoly({self.text()})"


def _q_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class BiFrac:
    """Quotient of two BiPoly values, the coefficient field for operators
    acting on sequences of polynomials in x."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = BiPoly.const(num)
        if isinstance(num, Poly):
            num = BiPoly.from_poly_n(num)
        if den is None:
            den = BiPoly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = BiPoly.const(den)
        elif isinstance(den, Poly):
            den = BiPoly.from_poly_n(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num = BiPoly()
            self.den = BiPoly.const(1)
            return
        cn, cd = num.content(), den.content()
        g = Fraction(
            math.gcd(cn.numerator * cd.denominator, cd.numerator * cn.denominator),
            cn.denominator * cd.denominator,
        )
        num = num * (Q1 / g)
        den = den * (Q1 / g)
        # den now has integer-coprime-with-num content; clear residual
        # rational content of each part independently to integers
        cn, cd = num.content(), den.content()
        if cn.denominator != 1 or cd.denominator != 1:
            l = Fraction(_lcm(cn.denominator, cd.denominator))
            num = num * l
            den = den * l
        if den.leading_coeff_lex() < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(BiPoly())

    @classmethod
    def one(cls):
        return cls(BiPoly.const(1))

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, BiFrac):
            return other
        if isinstance(other, (int, Fraction, BiPoly, Poly)):
            return BiFrac(other)
        return None

    def __neg__(self):
        r = BiFrac.__new__(BiFrac)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiFrac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero")
        return BiFrac(self.num * o.den, self.den * o.num)

    def shift(self, k: int) -> "BiFrac":
        if k == 0:
            return self
        return BiFrac(self.num.shift_n(k), self.den.shift_n(k))

    def diff_x(self) -> "BiFrac":
        return BiFrac(
            self.num.diff_x() * self.den - self.num * self.den.diff_x(),
            self.den * self.den,
        )

    def subst_x(self, xval) -> RatFunc:
        den = self.den.subst_x(xval)
        if den.is_zero:
            raise ZeroDivisionError(f"denominator vanishes identically at x = {xval}")
        return RatFunc(self.num.subst_x(xval), den)

    @property
    def is_polynomial(self):
        return self.den == BiPoly.const(1)

    def total_degree(self):
        return max(self.num.total_degree(), 0) + max(self.den.total_degree(), 0)

    def __repr__(self):
        if self.is_polynomial:
            return f"BiFrac({self.num.text()})"
        return f"BiFrac(({self.num.text()})/({self.den.text()}))"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)
