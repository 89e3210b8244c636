import threading
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from signfree import (
    LaurentElement,
    LazySeries,
    NotAUnitError,
    format_series,
    hensel_newton_root,
    series_abs,
    series_frac,
    series_inf,
    series_inverse,
    series_otf_split,
    series_sign_potential,
    series_sup,
)
from signfree.series import (
    LEFT,
    NO,
    RIGHT,
    UNKNOWN,
    SeriesPreconditionError,
    Unknown,
    series_poly_eval,
)

e = LazySeries.epsilon()
S = LazySeries.from_coeffs
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
truncated = st.lists(small, max_size=8).map(S)


def lex_max(a, b):
    """Larger of two coefficient lists in the order where e is a positive infinitesimal."""
    for x, y in zip(a, b):
        if x != y:
            return a if x > y else b
    return a


def test_sign_potential_examples():
    xi = e - e * e
    assert [series_sign_potential(xi, k) for k in range(3)] == [0, 1, 1]
    assert all(series_sign_potential(S([]), k) == 0 for k in range(10))
    m = -(e**3)
    assert (series_sign_potential(m, 2), series_sign_potential(m, 3)) == (0, -1)


@settings(max_examples=100)
@given(truncated)
def test_sign_potential_stabilizes(xi):
    for k in range(20):
        if xi.kappa(k):
            assert xi.kappa(k + 1) == xi.kappa(k)


@settings(max_examples=100)
@given(truncated)
def test_square_sign(xi):
    sq = xi * xi
    for k in range(26):
        assert (sq.kappa(2 * k) == 0) == (xi.kappa(k) == 0)
        assert sq.kappa(2 * k + 1) in (0, 1)


def test_abs_and_sup_examples():
    assert series_abs(e - 2 * e**2).coeffs(4) == [0, 1, -2, 0]
    assert series_abs(-e).coeffs(3) == [0, 1, 0]
    assert series_sup(e, e**2).coeffs(10) == e.coeffs(10)


@settings(max_examples=100)
@given(truncated, truncated)
def test_lattice_operations_on_truncations(xi, zeta):
    n = 20
    assert series_sup(xi, zeta).coeffs(n) == lex_max(xi.coeffs(n), zeta.coeffs(n))
    total = series_sup(xi, zeta) + series_inf(xi, zeta)
    assert total.coeffs(n) == (xi + zeta).coeffs(n)
    a = series_abs(xi)
    assert all(a.kappa(k) in (0, 1) for k in range(n))
    for k in range(n):
        if xi.kappa(k) == 1:
            assert a.coeffs(n) == xi.coeffs(n)
            break


def test_inverse_examples():
    assert series_inverse(1 - e).coeffs(51) == [1] * 51
    assert series_inverse(LazySeries.constant(2)).coeffs(3) == [Fraction(1, 2), 0, 0]
    with pytest.raises(NotAUnitError):
        series_inverse(e)


@settings(max_examples=50)
@given(st.lists(small, min_size=1, max_size=6).filter(lambda cs: cs[0] != 0).map(S))
def test_inverse_product_is_one(xi):
    prod = xi * series_inverse(xi)
    assert prod.coeffs(51) == [1] + [0] * 50


def test_frac_examples():
    r = series_frac(e**2, e, 50)
    assert r.coeffs(51) == (e**3).coeffs(51)
    z = S([0, 0, 3, -1, 2])
    assert series_frac(z, z, 20).coeffs(20) == z.coeffs(20)
    assert series_frac(S([]), z, 20).coeffs(20) == [0] * 20


def test_frac_unknown_and_errors():
    r = series_frac(S([]), S([]), 10)
    assert isinstance(r, Unknown) and r.depth == 10
    with pytest.raises(SeriesPreconditionError) as err:
        series_frac(-e, e, 10)
    assert err.value.depth == 1
    with pytest.raises(SeriesPreconditionError):
        series_frac(e, e**2, 10)  # xi <= zeta fails at depth 1


units = st.lists(small, min_size=1, max_size=5).map(lambda cs: S([abs(cs[0]) + 1] + cs[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), units, units)
def test_frac_postconditions(a, b, u, w):
    if b > a:
        a, b = b, a
    xi, zeta = u.shift(a), w.shift(b)
    if a == b and (zeta - xi).kappa(60) < 0:
        xi, zeta = zeta, xi
    rho = series_frac(xi, zeta, 60)
    n = 51
    # fr1 with 0 <= xi <= zeta: rho * zeta = xi^2
    assert (rho * zeta).coeffs(n) == (xi * xi).coeffs(n)
    # fr2: 0 <= rho <= xi
    assert rho.kappa(n) >= 0 and (xi - rho).kappa(n) >= 0


def test_otf_examples():
    assert series_otf_split(e, e**2, 1) == LEFT
    assert series_otf_split(-e + e**2, e, 2) == RIGHT
    assert series_otf_split(e**2, -e, 1) == UNKNOWN


@settings(max_examples=100)
@given(truncated, truncated)
def test_otf_consistent_with_probes(xi, zeta):
    k = 10
    side = series_otf_split(xi, zeta, k)
    if (xi + zeta).kappa(k) != 1:
        assert side == UNKNOWN
    elif side == LEFT:
        assert xi.kappa(k) == 1
    else:
        assert side == RIGHT and zeta.kappa(k) == 1


def test_newton_examples():
    assert hensel_newton_root([-e, 1]).coeffs(10) == e.coeffs(10)
    P = [-e, 1, 1]
    root = hensel_newton_root(P)
    assert root.coeffs(3) == [0, 1, -1]
    assert series_poly_eval(P, root).coeffs(50) == [0] * 50
    with pytest.raises(SeriesPreconditionError):
        hensel_newton_root([-e, 0, 1])


def test_newton_against_closed_form():
    t = sp.Symbol("t")
    closed = sp.series((-1 + sp.sqrt(1 + 4 * t)) / 2, t, 0, 15).removeO()
    want = [Fraction(int(c.p), int(c.q)) for c in (sp.Poly(closed, t).all_coeffs()[::-1])]
    assert hensel_newton_root([-e, 1, 1]).coeffs(15) == want


def test_newton_concurrent_probes():
    root = hensel_newton_root([-e, 1, 1])
    out = {}

    def probe(k):
        out[k] = root.coeff(k)

    threads = [threading.Thread(target=probe, args=(k,)) for k in (40, 5, 33, 17)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    serial = hensel_newton_root([-e, 1, 1])
    assert all(out[k] == serial.coeff(k) for k in out)


def test_format():
    assert format_series(e - e**2, 4) == "e - e^2 + O(e^4)"
    assert format_series(S([]), 3) == "O(e^3)"
    assert format_series(S([Fraction(-1, 2), 0, 3]), 3) == "-1/2 + 3*e^2 + O(e^3)"


def test_laurent():
    a = LaurentElement(-2, S([3, 1]))  # 3 e^-2 + e^-1
    assert a.valuation(5) == -2
    assert a.coeff(-1) == 1 and a.coeff(0) == 0
    b = LaurentElement(-3, S([0, 3, 1]))  # same element written differently
    assert a.equals(b, 20) == UNKNOWN
    assert a.equals(LaurentElement(-2, S([3, 2])), 20) == NO
    inv = a.inverse(5)
    one = a * inv
    assert [one.coeff(k) for k in range(0, 10)] == [1] + [0] * 9
    assert isinstance(LaurentElement(0, S([])).inverse(5), Unknown)
    assert (a - a).valuation(10) is None
