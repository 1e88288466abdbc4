"""Sequence-definition language, catalog of built-in triangles, and exact
row/derivative-vector generation.

Grammar of the definition language::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := uint | 'n' | 'k' | 'binomial' '(' expr ',' expr ')'
            | 'factorial' '(' expr ')' | '(' expr ')'

Evaluation at integer (n, k) is exact; out-of-range binomials are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DefinitionSyntaxError,
    EvaluationError,
    NonIntegerArgument,
    UnknownIdentifier,
    UnknownSequence,
)

Q0 = Fraction(0)
Q1 = Fraction(1)


# --- abstract syntax --------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str  # "n" or "k"


@dataclass(frozen=True)
class BinOp:
    op: str    # + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str  # "binomial" or "factorial"
    args: tuple


# --- tokenizer / parser -----------------------------------------------------


_KEYWORDS = ("binomial", "factorial")


def _tokenize(text: str):
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^(),":
            toks.append(("OP", ch, line, col))
            col += 1
            i += 1
            continue
        raise DefinitionSyntaxError(f"unexpected character {ch!r}", line, col)
    toks.append(("END", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, val):
        kind, v, line, col = self.advance()
        if kind == "END" or v != val:
            raise DefinitionSyntaxError(
                f"found {v!r}" if kind != "END" else "unexpected end of input",
                line, col, expected=repr(val))

    def parse(self):
        e = self.expr()
        kind, v, line, col = self.peek()
        if kind != "END":
            raise DefinitionSyntaxError(f"unexpected {v!r} after expression",
                                        line, col)
        return e

    def expr(self):
        e = self.term()
        while True:
            kind, v, _, _ = self.peek()
            if kind == "OP" and v in "+-":
                self.advance()
                e = BinOp(v, e, self.term())
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            kind, v, _, _ = self.peek()
            if kind == "OP" and v in "*/":
                self.advance()
                e = BinOp(v, e, self.factor())
            else:
                return e

    def factor(self):
        e = self.base()
        kind, v, _, _ = self.peek()
        if kind == "OP" and v == "^":
            self.advance()
            kind, ev, line, col = self.advance()
            if kind != "INT":
                raise DefinitionSyntaxError(
                    "exponent must be an unsigned integer literal", line, col,
                    expected="integer")
            return Pow(e, int(ev))
        return e

    def base(self):
        kind, v, line, col = self.advance()
        if kind == "INT":
            return Lit(int(v))
        if kind == "IDENT":
            if v in ("n", "k"):
                return Var(v)
            if v in _KEYWORDS:
                self.expect("(")
                args = [self.expr()]
                if v == "binomial":
                    self.expect(",")
                    args.append(self.expr())
                self.expect(")")
                return Call(v, tuple(args))
            raise UnknownIdentifier(
                f"unknown identifier {v!r} at line {line}, column {col}; "
                "allowed: n, k, binomial, factorial")
        if kind == "OP" and v == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "END":
            raise DefinitionSyntaxError("unexpected end of input", line, col,
                                        expected="expression")
        raise DefinitionSyntaxError(f"unexpected {v!r}", line, col,
                                    expected="expression")


def parse_def(text: str):
    """Parse a coefficient expression into its syntax tree."""
    return _Parser(text).parse()


def pretty_print(e) -> str:
    """Canonical text form; ``parse_def(pretty_print(e))`` returns ``e``."""
    prec = {"+": 1, "-": 1, "*": 2, "/": 2}

    def go(node, parent_prec, right_side):
        if isinstance(node, Lit):
            return str(node.value)
        if isinstance(node, Var):
            return node.name
        if isinstance(node, Call):
            return f"{node.func}({', '.join(go(a, 0, False) for a in node.args)})"
        if isinstance(node, Pow):
            base = go(node.base, 3, False)
            if isinstance(node.base, (BinOp, Pow)):
                base = f"({base})"
            return f"{base}^{node.exponent}"
        if isinstance(node, BinOp):
            p = prec[node.op]
            s = f"{go(node.left, p, False)} {node.op} {go(node.right, p, True)}"
            if p < parent_prec or (right_side and p == parent_prec):
                return f"({s})"
            return s
        raise TypeError(type(node).__name__)

    return go(e, 0, False)


# --- evaluation -------------------------------------------------------------


def _int_binomial(a: int, b: int) -> int:
    if b < 0:
        return 0
    if a >= 0:
        if b > a:
            return 0
        return math.comb(a, b)
    # integer upper argument below zero: product formula, exact integer
    num = 1
    for i in range(b):
        num *= a - i
    return num // math.factorial(b)


def _require_int(v: Fraction, what: str, n, k) -> int:
    if v.denominator != 1:
        raise NonIntegerArgument(
            f"{what} argument {v} is not an integer at (n={n}, k={k})")
    return v.numerator


def eval_coeff(e, n: int, k: int) -> Fraction:
    """Exact value of the expression at integer (n, k)."""

    def go(node) -> Fraction:
        if isinstance(node, Lit):
            return Fraction(node.value)
        if isinstance(node, Var):
            return Fraction(n if node.name == "n" else k)
        if isinstance(node, Pow):
            return go(node.base) ** node.exponent
        if isinstance(node, BinOp):
            l, r = go(node.left), go(node.right)
            if node.op == "+":
                return l + r
            if node.op == "-":
                return l - r
            if node.op == "*":
                return l * r
            if r == 0:
                raise EvaluationError("division by zero", n, k)
            return l / r
        if isinstance(node, Call):
            if node.func == "binomial":
                a = _require_int(go(node.args[0]), "binomial", n, k)
                b = _require_int(go(node.args[1]), "binomial", n, k)
                return Fraction(_int_binomial(a, b))
            a = _require_int(go(node.args[0]), "factorial", n, k)
            if a < 0:
                raise NonIntegerArgument(
                    f"factorial of negative value {a} at (n={n}, k={k})")
            return Fraction(math.factorial(a))
        raise TypeError(type(node).__name__)

    return go(e)


# --- triangles --------------------------------------------------------------


@dataclass(frozen=True)
class CoeffTriangle:
    """A coefficient triangle: closed-form expression or recurrence trio.

    In expression mode ``row(n)`` evaluates ``a(n, k)`` for ``0 <= k <= n``
    exactly; ``row_overrides`` patches rows the expression cannot cover
    (poles at small n).  In recurrence mode only the derivative term
    vectors are available, supplied as three Recurrences for the values
    of the polynomials and their first two derivatives at 1.
    """

    name: str
    expr: object = None
    expr_text: str = ""
    recurrences: tuple = ()          # (F0, F1, F2) Recurrence trio
    symmetric: bool = False
    row_overrides: dict = field(default_factory=dict)
    experimental: bool = False
    notes: str = ""

    @property
    def kind(self) -> str:
        return "expression" if self.expr is not None else "recurrences"

    @property
    def has_rows(self) -> bool:
        return self.expr is not None

    def row(self, n: int):
        if not self.has_rows:
            raise EvaluationError(
                f"triangle {self.name!r} is recurrence-defined; rows are "
                "not available", n, None)
        if n in self.row_overrides:
            r = [Fraction(v) for v in self.row_overrides[n]]
            return r + [Q0] * (n + 1 - len(r))
        return [eval_coeff(self.expr, n, k) for k in range(n + 1)]


@dataclass(frozen=True)
class RowData:
    rows: tuple
    f0: tuple
    f1: tuple
    f2: tuple
    first_negative: object  # (n, k) or None


def eval_rows(triangle: CoeffTriangle, n_max: int) -> RowData:
    """Rows a(n, .) for n <= n_max and the three exact term vectors
    F0(n) = sum a, F1(n) = sum k*a, F2(n) = sum k(k-1)*a."""
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    rows = []
    f0, f1, f2 = [], [], []
    first_negative = None
    for n in range(n_max + 1):
        row = triangle.row(n)
        if first_negative is None:
            for k, v in enumerate(row):
                if v < 0:
                    first_negative = (n, k)
                    break
        rows.append(tuple(row))
        f0.append(sum(row, Q0))
        f1.append(sum((k * v for k, v in enumerate(row)), Q0))
        f2.append(sum((k * (k - 1) * v for k, v in enumerate(row)), Q0))
    return RowData(tuple(rows), tuple(f0), tuple(f1), tuple(f2), first_negative)


def make_triangle(name, text, symmetric=False, row_overrides=None,
                  experimental=False, notes="") -> CoeffTriangle:
    return CoeffTriangle(
        name=name,
        expr=parse_def(text),
        expr_text=text,
        symmetric=symmetric,
        row_overrides=row_overrides or {},
        experimental=experimental,
        notes=notes,
    )


def _build_catalog():
    entries = [
        make_triangle(
            "apery", "binomial(n,k)^2 * binomial(n+k,k)",
            notes="row sums are the Apery numbers 1, 3, 19, 147, ..."),
        make_triangle(
            "franel", "binomial(n,k)^3", symmetric=True,
            notes="row sums are the Franel numbers 1, 2, 10, 56, ..."),
        make_triangle(
            "binomial", "binomial(n,k)", symmetric=True,
            notes="rows of Pascal's triangle"),
        make_triangle(
            "narayana", "binomial(n,k) * binomial(n,k-1) / n",
            row_overrides={0: (1,)},
            notes="row sums are the Catalan numbers; a(n,0) = 0 for n >= 1"),
        make_triangle(
            "delannoy", "binomial(n,k) * binomial(n+k,k)",
            notes="row sums are the central Delannoy numbers (lattice paths "
                  "with diagonal steps); catalog mean/variance targets for "
                  "this family are unconfirmed"),
        make_triangle(
            "central-trinomial-triangle", "binomial(n,2*k) * binomial(2*k,k)",
            notes="a(n,k) counts balanced +/-/0 strings with k plus signs; "
                  "row sums are the central trinomial coefficients"),
        make_triangle(
            "generalized-narayana", "binomial(n,k) * binomial(n,k-1)",
            row_overrides={0: (1,)},
            notes="two-shifted binomial product; the normalized rows for "
                  "shift 1 match the Narayana distribution"),
        make_triangle(
            "motzkin-unaerated",
            "binomial(n,2*k) * binomial(2*k,k) / (k+1)",
            experimental=True,
            notes="experimental: Motzkin paths of length n by up-step count; "
                  "definition unconfirmed against the cited source"),
        make_triangle(
            "schroder",
            "binomial(n+k,2*k) * binomial(2*k,k) / (k+1)",
            experimental=True,
            notes="experimental: row sums are the large Schroeder numbers; "
                  "definition unconfirmed against the cited source"),
    ]
    cat = {e.name: e for e in entries}
    cat["central-trinomial"] = cat["central-trinomial-triangle"]
    return cat


_CATALOG = _build_catalog()


def catalog_names(include_experimental: bool = False):
    names = []
    for name, entry in _CATALOG.items():
        if name != entry.name:
            continue  # alias
        if entry.experimental and not include_experimental:
            continue
        names.append(name)
    return sorted(names)


def catalog_get(name: str, include_experimental: bool = False) -> CoeffTriangle:
    entry = _CATALOG.get(name)
    if entry is not None and entry.experimental and not include_experimental:
        entry = None
    if entry is None:
        raise UnknownSequence(name, catalog_names(include_experimental))
    return entry


# --- definition files -------------------------------------------------------


def load_definition_file(path) -> CoeffTriangle:
    """Definition file format::

        name: <identifier>
        a(n,k) = <expr>
        symmetric: true        (optional)
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    return parse_definition_text(raw)


def parse_definition_text(raw: str) -> CoeffTriangle:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise DefinitionSyntaxError("empty definition file", 1, 1)
    no, first = lines[0]
    if not first.startswith("name:"):
        raise DefinitionSyntaxError("first line must be 'name: <identifier>'",
                                    no, 1)
    name = first[len("name:"):].strip()
    if not name or not all(c.isalnum() or c in "-_" for c in name):
        raise DefinitionSyntaxError(f"invalid sequence name {name!r}", no, 1)
    if len(lines) < 2:
        raise DefinitionSyntaxError("missing 'a(n,k) = <expr>' line", no, 1)
    no2, second = lines[1]
    head, sep, expr_text = second.partition("=")
    if not sep or head.replace(" ", "") != "a(n,k)":
        raise DefinitionSyntaxError("second line must be 'a(n,k) = <expr>'",
                                    no2, 1)
    symmetric = False
    for no3, extra in lines[2:]:
        key, sep, val = extra.partition(":")
        if key.strip() == "symmetric" and sep:
            symmetric = val.strip().lower() in ("true", "yes", "1")
        else:
            raise DefinitionSyntaxError(f"unrecognized line {extra!r}", no3, 1)
    return make_triangle(name, expr_text.strip(), symmetric=symmetric)
