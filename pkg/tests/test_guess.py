from fractions import Fraction as Q

import pytest

from holonorm.errors import RecurrenceNotFound
from holonorm.guess import GuessConfig, guess_recurrence, verify_recurrence
from holonorm.ore import Recurrence
from holonorm.polys import Poly

from oracles import apery_row, franel_row, term_vectors

# frozen by direct summation (oracles.term_vectors)
APERY_F0_HEAD = [1, 3, 19, 147, 1251]
FRANEL_F0_HEAD = [1, 2, 10, 56, 346]

# 50 digits of pi, as integers
PI_DIGITS = [int(c) for c in
             "31415926535897932384626433832795028841971693993751"]


def fib_terms(count):
    out = [Q(1), Q(1)]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out[:count]


def test_fibonacci():
    rec = guess_recurrence(fib_terms(50))
    assert rec.order == 2 and rec.degree == 0
    assert list(rec.coeffs) == [Poly([-1]), Poly([-1]), Poly([1])]


def test_apery_guess_matches_published_recurrence():
    f0, _, _ = term_vectors(apery_row, 160)
    assert [int(v) for v in f0[:5]] == APERY_F0_HEAD
    rec = guess_recurrence(f0[:60])
    assert (rec.order, rec.degree) == (2, 2)
    expected = [Poly([-1, -2, -1]), Poly([-25, -33, -11]), Poly([4, 4, 1])]
    assert list(rec.coeffs) == expected
    ok, _ = verify_recurrence(rec, f0)
    assert ok


def test_franel_verify_example():
    f0, _, _ = term_vectors(franel_row, 10)
    assert [int(v) for v in f0[:5]] == FRANEL_F0_HEAD
    rec = Recurrence([Poly([-8, -16, -8]), Poly([-16, -21, -7]),
                      Poly([4, 4, 1])], f0[:3], 1)
    ok, bad = verify_recurrence(rec, f0[:5])
    assert ok and bad is None


def test_verify_failure_index():
    rec = Recurrence([Poly([-2]), Poly([1])], [1], 1)
    ok, bad = verify_recurrence(rec, [Q(1), Q(2), Q(4), Q(9)])
    assert not ok and bad == 2


def test_verify_own_solution():
    rec = Recurrence([Poly([1, 1]), Poly([-1]), Poly([2, 3])], [1, 2, 5], 1)
    # synthesize a solution: rebuild terms forward from the relation
    terms = [Q(1), Q(2), Q(5)]
    for n in range(1, 10):
        lead = rec.coeffs[2](n)
        s = rec.coeffs[0](n) * terms[n] + rec.coeffs[1](n) * terms[n + 1]
        terms.append(-s / lead)
    ok, bad = verify_recurrence(rec, terms)
    assert ok, bad


def test_pi_digits_not_p_recursive_at_bounds():
    with pytest.raises(RecurrenceNotFound):
        guess_recurrence([Q(d) for d in PI_DIGITS])


def test_soundness_returned_recurrence_annihilates_everything():
    f0, f1, f2 = term_vectors(apery_row, 80)
    for vec in (f0, f1, f2):
        rec = guess_recurrence(vec)
        ok, bad = verify_recurrence(rec, vec)
        assert ok, bad


def test_minimality_monotonicity():
    f0, _, _ = term_vectors(franel_row, 90)
    small = guess_recurrence(f0, GuessConfig(max_order=2, max_degree=2))
    large = guess_recurrence(f0, GuessConfig(max_order=4, max_degree=4))
    larger = guess_recurrence(f0, GuessConfig(max_order=5, max_degree=5))
    assert (small.order, small.degree) == (large.order, large.degree)
    assert (large.order, large.degree) == (larger.order, larger.degree)
    assert list(small.coeffs) == list(large.coeffs) == list(larger.coeffs)


def test_reproducibility():
    f0, _, _ = term_vectors(apery_row, 70)
    a = guess_recurrence(f0)
    b = guess_recurrence(list(f0))
    assert list(a.coeffs) == list(b.coeffs)
    assert a.initial_values == b.initial_values


def test_requires_enough_terms():
    with pytest.raises(ValueError):
        guess_recurrence([Q(1)] * 10)


def test_config_validation():
    with pytest.raises(ValueError):
        GuessConfig(max_order=0)


def test_all_zero_sequence():
    rec = guess_recurrence([Q(0)] * 60)
    ok, bad = verify_recurrence(rec, [Q(0)] * 80)
    assert ok
