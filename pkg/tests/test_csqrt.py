import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signfree import UniPoly, complex_sqrt_cover
from signfree.csqrt import Quad

import oracles

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)


@pytest.mark.parametrize(
    "a,b,u,v",
    [(4, 0, 2, 0), (-1, 0, 0, 1), (0, 2, 1, 1), (0, -2, 1, -1), (3, 4, 2, 1)],
)
def test_examples(a, b, u, v):
    c = complex_sqrt_cover(a, b)
    assert c.u.value == u and c.v.value == v
    assert c.square_ok and c.sign_ok and c.identity_ok


def test_irrational_parts():
    c = complex_sqrt_cover(1, 1)
    assert not c.u.is_rational
    # u^2 = (1 + sqrt 2) / 2
    assert oracles.is_root(c.u, UniPoly([-1, 0, -4, 0, 4]))
    assert c.square_ok and c.identity_ok


@settings(max_examples=50, deadline=None)
@given(rationals, rationals)
def test_random_covers(a, b):
    c = complex_sqrt_cover(a, b)
    assert c.square_ok and c.sign_ok and c.identity_ok
    z = cmath.sqrt(complex(float(a), float(b)))
    assert abs(float(c.u) - z.real) < 1e-9
    assert abs(float(c.v) - z.imag) < 1e-9


def test_tower_arithmetic():
    # sqrt(2) * sqrt(2) = 2 and 1/sqrt(2) * sqrt(2) = 1 in Q[t]/(t^2 - 2)
    t = Quad(Fraction(0), Fraction(1), Fraction(2))
    assert (t * t - 2).is_zero()
    assert (t.inverse() * t - 1).is_zero()
    # nested: s = sqrt 2, w = sqrt(1 + s): w^2 - s - 1 = 0
    w = Quad(0, 1, t + 1)
    assert (w * w - w._lift(t) - 1).is_zero()
