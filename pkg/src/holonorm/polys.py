"""Exact univariate polynomial arithmetic over the rationals.

Dense polynomials with ``Fraction`` coefficients, exact gcd and square-free
machinery, Sturm chains with certified root counting, bisection-based root
enclosures, and rational-function coefficients for recurrence operators.
All operations are pure and all values immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bigfloat import to_mpf
from .errors import NoSuchRoot, PoleEvaluation

Q0 = Fraction(0)
Q1 = Fraction(1)


def _as_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``n**i``.

    Trailing zero coefficients are stripped; the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((_as_q(c),))

    @classmethod
    def var(cls) -> "Poly":
        return cls((Q0, Q1))

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        return cls((Q0,) * k + (_as_q(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            return Q0
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Q0

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-_as_q(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_q(other)
            return Poly(tuple(a * c for a in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Q0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        num = list(self.coeffs)
        d = other.degree
        lead = other.leading
        qlen = max(0, len(num) - d)
        q = [Q0] * qlen
        for i in range(len(num) - 1, d - 1, -1):
            c = num[i]
            if c == 0:
                continue
            k = i - d
            f = c / lead
            q[k] = f
            for j, oc in enumerate(other.coeffs):
                num[k + j] -= f * oc
        return Poly(q), Poly(num[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __call__(self, x) -> Fraction:
        x = _as_q(x)
        acc = Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mpf(self, x, prec: int):
        """Numeric Horner evaluation at an mpf point."""
        from mpmath import workprec

        with workprec(prec):
            acc = to_mpf(0, prec)
            for c in reversed(self.coeffs):
                acc = acc * x + to_mpf(c, prec)
            return acc

    def shift(self, k) -> "Poly":
        """Composition p(n + k)."""
        k = _as_q(k)
        if k == 0 or self.is_zero:
            return self
        acc = Poly()
        xk = Poly((k, Q1))
        for c in reversed(self.coeffs):
            acc = acc * xk + Poly.const(c)
        return acc

    def content(self) -> Fraction:
        """Positive rational c with p / c primitive (integer, coprime)."""
        if self.is_zero:
            return Q1
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_signed(self) -> "Poly":
        """p divided by its positive content (sign preserved)."""
        if self.is_zero:
            return self
        c = self.content()
        return Poly(tuple(a / c for a in self.coeffs))

    def primitive_positive(self) -> "Poly":
        p = self.primitive_signed()
        if p.leading < 0:
            p = -p
        return p

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def text(self, var: str = "n") -> str:
        """Canonical expanded form, descending exponents."""
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _q_text(mag)
            else:
                v = var if k == 1 else f"{var}^{k}"
                body = v if mag == 1 else f"{_q_text(mag)}*{v}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        s = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _q_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def poly_arith(p: Poly, q: Poly, op: str):
    """Dispatch basic polynomial arithmetic by operation name."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divrem":
        return divmod(p, q)
    raise ValueError(f"unknown op {op!r}")


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient."""
    a, b = p.primitive_signed(), q.primitive_signed()
    while not b.is_zero:
        r = a % b
        a, b = b, r.primitive_signed()
    if a.is_zero:
        return a
    return a.primitive_positive()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero or q.is_zero:
        return Poly()
    g = poly_gcd(p, q)
    return ((p * q) // g).primitive_positive()


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return Poly.const(1)
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive_positive()
    return (p // g).primitive_positive()


def squarefree_decomposition(p: Poly):
    """Yun decomposition ``[(f, m), ...]`` with ``p ~ prod f**m``.

    Factors are primitive with positive leading coefficient; the constant
    scale is dropped.  Intermediate values keep their exact rational
    scaling (rescaling mid-loop would break the ``d = c - b'`` linkage).
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    b = p // g
    c = dp // g
    d = c - b.derivative()
    for i in range(1, p.degree + 2):
        if b.degree == 0:
            break
        if d.is_zero:
            out.append((b.primitive_positive(), i))
            break
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a.primitive_positive(), i))
            b = b // a
            c = d // a
        else:
            c = d
        d = c - b.derivative()
    return out


def sturm_chain(p: Poly):
    """Sturm chain of p; each element primitive (positive-content scaling)."""
    chain = [p.primitive_signed()]
    dp = p.derivative()
    if dp.is_zero:
        return chain
    chain.append(dp.primitive_signed())
    while chain[-1].degree > 0:
        r = -(chain[-2] % chain[-1])
        if r.is_zero:
            break
        chain.append(r.primitive_signed())
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _chain_signs(chain, point):
    """Signs of the chain at a point; ``point`` may be '-inf' or '+inf'."""
    signs = []
    for q in chain:
        if q.is_zero:
            signs.append(0)
        elif point == "-inf":
            s = _sign(q.leading)
            signs.append(s if q.degree % 2 == 0 else -s)
        elif point == "+inf":
            signs.append(_sign(q.leading))
        else:
            signs.append(_sign(q(point)))
    return signs


def _sign_changes(signs) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_count(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; None bounds mean infinity."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    if p.degree == 0:
        return 0
    sf = squarefree_part(p)
    if sf.degree == 0:
        return 0
    chain = sturm_chain(sf)
    a = _chain_signs(chain, "-inf" if lo is None else _as_q(lo))
    b = _chain_signs(chain, "+inf" if hi is None else _as_q(hi))
    return _sign_changes(a) - _sign_changes(b)


def real_root_count_with_multiplicity(p: Poly, lo=None, hi=None) -> int:
    """Real roots in (lo, hi] counted with multiplicity."""
    total = 0
    for factor, mult in squarefree_decomposition(p):
        total += mult * sturm_count(factor, lo, hi)
    return total


def cauchy_bound(p: Poly) -> Fraction:
    """All roots lie strictly inside |x| < bound."""
    if p.is_zero or p.degree == 0:
        return Q1
    lead = abs(p.leading)
    m = max(abs(c) for c in self_coeffs_below(p))
    return Q1 + m / lead


def self_coeffs_below(p: Poly):
    return p.coeffs[:-1] if p.degree > 0 else (Q0,)


def _trial_divisors(n: int, cap: int = 100_000):
    """Divisors of |n| when it factors by trial division below cap, else None."""
    n = abs(n)
    if n == 0:
        return None
    factors = {}
    d = 2
    while d * d <= n and d <= cap:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > cap * cap:
            return None
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [dd * prime ** e for dd in divs for e in range(mult + 1)]
    return sorted(set(divs))


def rational_roots(p: Poly):
    """Exact rational roots found via bounded divisor enumeration.

    May miss roots when the trailing/leading coefficients do not factor by
    bounded trial division; callers fall back to bisection enclosures.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    p = p.primitive_signed()
    roots = set()
    coeffs = list(p.coeffs)
    while coeffs and coeffs[0] == 0:
        roots.add(Q0)
        coeffs.pop(0)
    q = Poly(coeffs)
    if q.degree <= 0:
        return sorted(roots)
    a0 = int(q.coeffs[0])
    ad = int(q.leading)
    ps = _trial_divisors(a0)
    qs = _trial_divisors(ad)
    if ps is None or qs is None:
        return sorted(roots)
    for num in ps:
        for den in qs:
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if q(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


class RootEnclosure:
    """Certified rational enclosure [lo, hi] of a real root."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo: Fraction, hi: Fraction, prec: int):
        self.lo = lo
        self.hi = hi
        self.prec = prec

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def value(self, prec=None):
        return to_mpf(self.midpoint, prec or self.prec)

    def __repr__(self):
        return f"RootEnclosure({self.lo}, {self.hi}, prec={self.prec})"


def isolate_root(p: Poly, selector="largest-real", prec: int = 256,
                 lo=None, hi=None) -> RootEnclosure:
    """Enclosure of the largest real root matching the selector.

    ``selector`` is ``"largest-real"`` (whole line) or ``"interval"`` with
    explicit lo/hi.  The enclosure is refined by bisection on the Sturm
    chain until its width is at most ``2**(1-prec)`` times the root's
    magnitude; exact rational roots collapse to zero-width enclosures.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    sf = squarefree_part(p)
    if selector == "largest-real":
        bound = cauchy_bound(sf)
        left, right = -bound, bound
    elif selector == "interval":
        if lo is None or hi is None:
            raise ValueError("interval selector needs lo and hi")
        left, right = _as_q(lo), _as_q(hi)
    else:
        raise ValueError(f"unknown selector {selector!r}")

    chain = sturm_chain(sf)

    def count(a, b):
        return _sign_changes(_chain_signs(chain, a)) - _sign_changes(_chain_signs(chain, b))

    total = count(left, right)
    if total == 0:
        raise NoSuchRoot(f"no real root for selector {selector!r}")

    # exact shortcut via bounded rational-root search
    exact = [r for r in rational_roots(sf) if left < r <= right]
    if exact:
        r = max(exact)
        if count(r, right) == 0:
            return RootEnclosure(r, r, prec)

    # narrow to the largest root in range
    a, b = left, right
    while count(a, b) > 1:
        m = (a + b) / 2
        if sf(m) == 0 and count(m, b) == 0:
            return RootEnclosure(m, m, prec)
        if count(m, b) >= 1:
            a = m
        else:
            b = m

    # refine the single-root interval to the requested relative width
    guard = 4 * (prec + bit_length_q(b - a) + 8)
    for _ in range(guard):
        width = b - a
        mag = min(abs(a), abs(b)) if a * b > 0 else max(abs(a), abs(b))
        if mag > 0 and width <= Fraction(2) ** (1 - prec) * mag:
            break
        if width == 0:
            break
        m = (a + b) / 2
        vm = sf(m)
        if vm == 0:
            if count(m, b) == 0:
                return RootEnclosure(m, m, prec)
            a = m
            continue
        if count(m, b) >= 1:
            a = m
        else:
            b = m
    return RootEnclosure(a, b, prec)


def bit_length_q(q: Fraction) -> int:
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


def nonneg_integer_roots(p: Poly):
    """All nonnegative integer roots of p, found exactly."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    sf = squarefree_part(p)
    roots = []
    if sf(Q0) == 0:
        roots.append(0)
    bound = cauchy_bound(sf)
    stack = [(Q0, bound)]
    chain = sturm_chain(sf)

    def count(a, b):
        return _sign_changes(_chain_signs(chain, a)) - _sign_changes(_chain_signs(chain, b))

    while stack:
        a, b = stack.pop()
        c = count(a, b)
        if c == 0:
            continue
        if b - a <= Fraction(1, 2):
            k = math.ceil(a)
            while k <= b:
                if k > a and sf(Fraction(k)) == 0:
                    roots.append(int(k))
                k += 1
            continue
        m = (a + b) / 2
        stack.append((a, m))
        stack.append((m, b))
    return sorted(set(roots))


class RatFunc:
    """Rational function of ``n``: quotient of two ``Poly`` values.

    Normalized so the denominator is primitive with positive leading
    coefficient and shares no factor with the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif isinstance(den, (int, Fraction)):
            den = Poly.const(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            self.num = Poly()
            self.den = Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        c = den.content()
        if den.leading < 0:
            c = -c
        self.num = num * (Q1 / c)
        self.den = den * (Q1 / c)

    @classmethod
    def zero(cls):
        return cls(Poly())

    @classmethod
    def one(cls):
        return cls(Poly.const(1))

    @classmethod
    def n(cls):
        return cls(Poly.var())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0 and self.den.leading == 1

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other if isinstance(other, Poly) else Poly.const(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(Poly.const(other))
        if isinstance(other, Poly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def shift(self, k: int) -> "RatFunc":
        """Substitution n -> n + k."""
        if k == 0:
            return self
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = self.num.shift(k), self.den.shift(k)
        return r

    def __call__(self, n) -> Fraction:
        d = self.den(n)
        if d == 0:
            raise PoleEvaluation(n)
        return self.num(n) / d

    def total_degree(self) -> int:
        return max(self.num.degree, 0) + max(self.den.degree, 0)

    def __repr__(self):
        if self.is_polynomial:
            return f"RatFunc({self.num.text()})"
        return f"RatFunc(({self.num.text()})/({self.den.text()}))"
