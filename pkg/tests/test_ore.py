import random
from fractions import Fraction as Q

import pytest

from holonorm.bivar import BiFrac, BiPoly
from holonorm.ore import (
    OrePoly,
    Recurrence,
    derivative_closure,
    lclm,
    operator_text,
    ore_apply,
    ore_from_bivar_text,
    ore_mul,
    parse_operator_text,
)
from holonorm.polys import Poly, RatFunc

from oracles import apery_row, term_vectors

R = RatFunc

# Bivariate shift-operator annihilating the Apery polynomials
# sum_k binomial(n,k)^2 binomial(n+k,k) x^k; derived once by exact linear
# algebra over the first rows and verified symbolically below.
APERY_X_OPERATOR = (
    "(32*n^3*x - 27*n^3 + 236*n^2*x - 201*n^2 + 552*n*x - 477*n + 396*x - 351)*S^3"
    " + (-256*n^3*x^2 + 120*n^3*x + 81*n^3 - 1632*n^2*x^2 + 780*n^2*x + 522*n^2"
    " - 3376*n*x^2 + 1670*n*x + 1086*n - 2232*x^2 + 1170*x + 717)*S^2"
    " + (512*n^3*x^3 - 1072*n^3*x^2 + 636*n^3*x - 81*n^3 + 2752*n^2*x^3"
    " - 5792*n^2*x^2 + 3456*n^2*x - 441*n^2 + 4800*n*x^3 - 10140*n*x^2"
    " + 6068*n*x - 768*n + 2736*x^3 - 5796*x^2 + 3472*x - 432)*S"
    " + (32*n^3*x^2 - 59*n^3*x + 27*n^3 + 140*n^2*x^2 - 260*n^2*x + 120*n^2"
    " + 184*n*x^2 - 343*n*x + 159*n + 76*x^2 - 142*x + 66)"
)


def op_ratfunc(*poly_coeff_lists):
    return OrePoly([R(Poly(c)) for c in poly_coeff_lists])


def test_ore_apply_examples():
    acc = ore_apply(op_ratfunc([-2], [1]), lambda n: Q(2) ** n)
    assert all(acc(n) == 0 for n in range(8))

    fib = [1, 1, 2, 3, 5, 8]
    acc = ore_apply(op_ratfunc([-1], [-1], [1]), fib)
    assert all(acc(n) == 0 for n in range(4))

    apery = op_ratfunc([-1, -2, -1], [-25, -33, -11], [4, 4, 1])
    terms = [1, 3, 19, 147, 1251]
    acc = ore_apply(apery, terms)
    assert all(acc(n) == 0 for n in range(3))


def test_ore_apply_pole_reports_index():
    from holonorm.errors import PoleEvaluation

    op = OrePoly([R(Poly([1]), Poly([-2, 1])), R.one()])
    acc = ore_apply(op, lambda n: Q(1))
    with pytest.raises(PoleEvaluation) as err:
        acc(2)
    assert err.value.index == 2


def test_commutation_rule():
    S = OrePoly([R.zero(), R.one()])
    n = OrePoly([R.n()])
    prod = ore_mul(S, n)
    assert prod.coeffs[0].is_zero
    assert prod.coeffs[1] == R(Poly([1, 1]))


def test_constant_coefficients_commute():
    a = op_ratfunc([-2], [1])
    b = op_ratfunc([-3], [1])
    target = op_ratfunc([6], [-5], [1])
    assert ore_mul(a, b) == target
    assert ore_mul(b, a) == target


def test_composition_law_on_random_operators():
    rng = random.Random(7)

    def rand_op(order):
        coeffs = []
        for i in range(order + 1):
            c = [rng.randint(-3, 3) for _ in range(3)]
            if i == order and not any(c):
                c[0] = 1
            coeffs.append(R(Poly(c)))
        return OrePoly(coeffs)

    for _ in range(10):
        l1 = rand_op(rng.randint(1, 3))
        l2 = rand_op(rng.randint(1, 3))
        seq = [Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(12)]
        prod = ore_mul(l1, l2)
        inner = ore_apply(l2, seq)
        nested = ore_apply(l1, inner)
        direct = ore_apply(prod, seq)
        for n in range(len(seq) - prod.order):
            assert direct(n) == nested(n)


def test_lclm_examples():
    a = op_ratfunc([-2], [1])
    b = op_ratfunc([-3], [1])
    m, u, v = lclm(a, b)
    assert m == op_ratfunc([6], [-5], [1])
    assert ore_mul(u, a) == m and ore_mul(v, b) == m

    m, u, v = lclm(a, a)
    assert m == a


def test_lclm_annihilates_both_solution_spaces():
    rng = random.Random(3)
    for _ in range(5):
        c1 = [rng.randint(-4, 4) for _ in range(2)] + [1]
        c2 = [rng.randint(-4, 4) for _ in range(2)] + [1]
        l1 = op_ratfunc(*[[c] for c in c1])
        l2 = op_ratfunc(*[[c] for c in c2])
        m, _, _ = lclm(l1, l2)
        rec1 = Recurrence([Poly([c]) for c in c1],
                          [rng.randint(-5, 5) for _ in range(2)], 0)
        rec2 = Recurrence([Poly([c]) for c in c2],
                          [rng.randint(-5, 5) for _ in range(2)], 0)
        # valid_from 0 and constant leading coefficients: unroll anywhere
        s1 = rec1.unroll(12)
        s2 = rec2.unroll(12)
        mop = OrePoly([RatFunc(p.num, p.den) for p in m.coeffs])
        for seq in (s1, s2):
            acc = ore_apply(mop, seq)
            assert all(acc(n) == 0 for n in range(len(seq) - m.order))


def test_lclm_apery_value_and_derivative_sequences():
    f0, f1, _ = term_vectors(apery_row, 45)
    from holonorm.guess import guess_recurrence

    r0 = guess_recurrence(f0)
    r1 = guess_recurrence(f1)
    l0 = OrePoly([R(p) for p in r0.coeffs])
    l1 = OrePoly([R(p) for p in r1.coeffs])
    m, u, v = lclm(l0, l1)
    assert ore_mul(u, l0) == m and ore_mul(v, l1) == m
    combined = [a + b for a, b in zip(f0, f1)]
    acc = ore_apply(m, combined)
    assert all(acc(n) == 0 for n in range(1, 41 - m.order))


def test_derivative_closure_geometric():
    one_plus_x = BiPoly.const(1) + BiPoly.x()
    l1 = OrePoly([BiFrac(-one_plus_x), BiFrac(1)])
    closure = derivative_closure(l1)
    spec = OrePoly([c.subst_x(1) for c in closure.coeffs])
    acc = ore_apply(spec, lambda n: Q(n) * Q(2) ** (n - 1))
    assert all(acc(n) == 0 for n in range(21 - closure.order))


def test_derivative_closure_without_x_returns_input():
    l1 = OrePoly([BiFrac(-2), BiFrac(1)])
    assert derivative_closure(l1) == l1


def test_apery_x_operator_annihilates_rows_symbolically():
    coeffs = ore_from_bivar_text(APERY_X_OPERATOR).coeffs
    for n in range(1, 31):
        acc = BiPoly()
        for i, c in enumerate(coeffs):
            assert c.is_polynomial
            collapsed = {}
            for (ni, xj), cc in c.num.terms.items():
                key = (0, xj)
                collapsed[key] = collapsed.get(key, Q(0)) + cc * Q(n) ** ni
            row = BiPoly({(0, k): v for k, v in
                          enumerate(apery_row(n + i))})
            acc = acc + BiPoly(collapsed) * row
        assert acc.is_zero


def test_derivative_closure_apery_fixture():
    l1 = ore_from_bivar_text(APERY_X_OPERATOR)
    closure = derivative_closure(l1)
    spec = OrePoly([c.subst_x(1) for c in closure.coeffs])
    _, f1, _ = term_vectors(apery_row, 31 + closure.order)
    acc = ore_apply(spec, f1)
    assert all(acc(n) == 0 for n in range(1, 31))


def test_operator_text_round_trip():
    polys = [Poly([-1, -2, -1]), Poly([-25, -33, -11]), Poly([4, 4, 1])]
    text = operator_text(polys)
    assert text == ("(n^2 + 4*n + 4)*S^2 + (-11*n^2 - 33*n - 25)*S + "
                    "(-n^2 - 2*n - 1)")
    assert parse_operator_text(text) == polys


def test_recurrence_unroll_with_vanishing_leading_coeff():
    # (n-1) t(n+1) = (4n-2) t(n), valid from 1: t(2) needs an initial value
    rec = Recurrence([Poly([2, -4]), Poly([-1, 1])], [0, 0, 2], 1)
    assert rec.needed_initial_count() == 3
    assert rec.unroll(6) == [0, 0, 2, 12, 60, 280]


def test_recurrence_json_round_trip():
    rec = Recurrence([Poly([-1, -2, -1]), Poly([-25, -33, -11]),
                      Poly([4, 4, 1])], [1, 3], 1)
    doc = rec.to_json_dict()
    back = Recurrence.from_json_dict(doc)
    assert back.coeffs == rec.coeffs
    assert back.initial_values == rec.initial_values
