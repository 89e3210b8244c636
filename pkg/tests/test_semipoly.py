import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signfree import (
    DiffersAt,
    DomainError,
    Equal,
    ParseError,
    eval_term,
    format_term,
    parse_term,
    to_sup_inf_nf,
    tri_sort,
    univar_semipoly_compare,
)
from signfree import terms as T
from signfree.mpoly import MPoly
from signfree.semipoly import tri_term, tri_term_dual
from signfree.terms import UnboundVariableError

import oracles
from termgen import random_point, random_term

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)


def mp(text):
    return T.to_mpoly(parse_term(text))


# parsing and printing ----------------------------------------------------------------


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse_term("x + * y")
    assert err.value.pos == 4
    assert err.value.expected


@pytest.mark.parametrize("seed", range(30))
def test_print_parse_round_trip(seed):
    rng = oracles.rng_for(seed)
    t = random_term(rng, 4, ["x", "y", "z"])
    text = format_term(t)
    again = parse_term(text)
    assert format_term(again) == text
    p = random_point(rng, ["x", "y", "z"])
    assert eval_term(again, p) == eval_term(t, p)


# evaluation --------------------------------------------------------------------------


def test_eval_examples():
    assert eval_term(parse_term("x \\/ (1 - x)"), {"x": Fraction(1, 2)}) == Fraction(1, 2)
    assert eval_term(parse_term("abs(x)"), {"x": -3}) == 3
    assert eval_term(parse_term("pos(x) * neg(x)"), {"x": 5}) == 0


def test_unbound_variable_is_named():
    with pytest.raises(UnboundVariableError) as err:
        eval_term(parse_term("x + y"), {"x": 1})
    assert "y" in str(err.value)


# normal forms -----------------------------------------------------------------------------


def test_nf_examples():
    assert to_sup_inf_nf(parse_term("x \\/ y")).families == ((mp("x"),), (mp("y"),))
    assert to_sup_inf_nf(parse_term("a + (b \\/ c)")).families == ((mp("a + b"),), (mp("a + c"),))
    got = set(to_sup_inf_nf(parse_term("a * (b \\/ 0)")).families)
    want = {tuple(sorted((mp("a*b"), mp("(a^2 + 1)*b")), key=MPoly.key)),
            tuple(sorted((mp("-(a^2 + 1)*b"), mp("0")), key=MPoly.key))}
    assert got == want


def test_nf_is_deterministic():
    t = parse_term("(x \\/ y) * (z /\\ 1) + abs(x - z)")
    assert str(to_sup_inf_nf(t)) == str(to_sup_inf_nf(parse_term(format_term(t))))


@pytest.mark.parametrize("seed", range(25))
def test_nf_agrees_with_term(seed):
    rng = oracles.rng_for(1000 + seed)
    names = ["x", "y", "z"]
    t = random_term(rng, 5, names)
    nf = to_sup_inf_nf(t)
    for _ in range(20):
        p = random_point(rng, names)
        assert nf(p) == eval_term(t, p)


# Tri_k ---------------------------------------------------------------------------------------


def test_tri_examples():
    assert tri_sort([3, 1, 2]) == [1, 2, 3]
    assert tri_sort([5]) == [5]
    assert tri_sort([Fraction(1, 3), Fraction(1, 3)]) == [Fraction(1, 3)] * 2
    with pytest.raises(DomainError):
        tri_sort([])


@given(st.lists(rationals, min_size=1, max_size=5))
def test_tri_duality_and_order(xs):
    n = len(xs)
    mins_of_maxes = tri_sort(xs)
    for k in range(1, n + 1):
        dual = max(min(sub) for sub in itertools.combinations(xs, n - k + 1))
        assert mins_of_maxes[k - 1] == dual == sorted(xs)[k - 1]
    assert all(a <= b for a, b in zip(mins_of_maxes, mins_of_maxes[1:]))


def test_tri_terms_evaluate_to_sorted_values():
    names = ["a", "b", "c", "d"]
    vs = [T.Var(n) for n in names]
    rng = oracles.rng_for(7)
    for _ in range(10):
        p = random_point(rng, names)
        want = sorted(p[n] for n in names)
        for k in range(1, 5):
            assert eval_term(tri_term(k, vs), p) == want[k - 1] == eval_term(tri_term_dual(k, vs), p)


# univariate equality ------------------------------------------------------------------------


def test_compare_examples():
    r = univar_semipoly_compare("x \\/ (1 - x)", "1 \\/ x \\/ (1 - x)")
    assert isinstance(r, DiffersAt) and 0 < r.witness < 1
    assert r.left_value != r.right_value
    assert isinstance(univar_semipoly_compare("abs(x)", "x \\/ -x"), Equal)
    assert isinstance(univar_semipoly_compare("pos(x) * neg(x)", "0"), Equal)


def test_compare_rejects_two_variables():
    with pytest.raises(DomainError):
        univar_semipoly_compare("x", "y")


def test_compare_irrational_breakpoints():
    # both change branch at sqrt 2 and agree everywhere
    assert isinstance(univar_semipoly_compare("(x^2 - 2) \\/ 0", "pos(x^2 - 2)"), Equal)
    r = univar_semipoly_compare("(x^2 - 2) \\/ 0", "(x^2 - 2) \\/ (1/100)")
    assert isinstance(r, DiffersAt)


@pytest.mark.parametrize("seed", range(20))
def test_compare_is_symmetric_and_sound(seed):
    rng = oracles.rng_for(2000 + seed)
    s1 = random_term(rng, 3, ["x"])
    s2 = random_term(rng, 3, ["x"]) if seed % 2 else T.Add(s1, T.Mul(T.Const(Fraction(0)), s1))
    r12, r21 = univar_semipoly_compare(s1, s2), univar_semipoly_compare(s2, s1)
    assert type(r12) is type(r21)
    if isinstance(r12, DiffersAt):
        w = {"x": r12.witness}
        assert eval_term(s1, w) != eval_term(s2, w)
    else:
        for _ in range(1000):
            p = {"x": oracles.rand_rational(rng, 20)}
            assert eval_term(s1, p) == eval_term(s2, p)
