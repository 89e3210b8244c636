"""Independent reference computations used by the tests.

Nothing here calls into the package's own root isolation, gcd or comparison
code: exact facts come from sympy, numeric ones from a Lipschitz
branch-and-bound search in floating point.
"""

import random
from fractions import Fraction

import sympy as sp

X = sp.Symbol("X")


def to_sympy(p):
    """UniPoly (coefficients low to high) as a sympy Poly over QQ."""
    coeffs = [sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0]
    return sp.Poly(coeffs, X, domain="QQ")


def _q(x):
    return sp.Rational(x.numerator, x.denominator)


def count_roots(p, lo=None, hi=None):
    """Distinct real roots of p in the closed interval [lo, hi] (sympy Sturm)."""
    sp_p = to_sympy(p) if not isinstance(p, sp.Poly) else p
    return sp_p.sqf_part().count_roots(None if lo is None else _q(lo), None if hi is None else _q(hi))


def roots_with_multiplicity_above(p, a):
    """Number of real roots of p in (a, +inf), counted with multiplicity."""
    total = 0
    for factor, mult in to_sympy(p).sqf_list()[1]:
        n = factor.count_roots(_q(a), None) - (1 if factor.eval(_q(a)) == 0 else 0)
        total += n * mult
    return total


def root_intervals(p):
    """Disjoint rational isolating intervals (lo, hi) for the real roots of p."""
    out = []
    for (lo, hi), _ in to_sympy(p).sqf_part().intervals():
        out.append((Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q))))
    return out


def is_root(alpha, p):
    """Does p vanish at the real algebraic number alpha? Decided with sympy's gcd."""
    sp_p = to_sympy(p)
    if alpha.defpoly is None:
        return sp_p.eval(_q(alpha.lo)) == 0
    g = sp.gcd(to_sympy(alpha.defpoly), sp_p)
    if g.degree() < 1:
        return False
    # alpha is the only root of its defining polynomial in (lo, hi)
    return g.count_roots(_q(alpha.lo), _q(alpha.hi)) >= 1


def equals_root(alpha, p, interval):
    """Is alpha the root of p isolated by ``interval`` (closed, from root_intervals)?"""
    lo, hi = interval
    if alpha.defpoly is None:
        q = alpha.lo
        return lo <= q <= hi and to_sympy(p).eval(_q(q)) == 0
    if not is_root(alpha, p):
        return False
    # the common root lies in (alpha.lo, alpha.hi); it is this root of p iff the
    # overlap of the two intervals contains a root of the gcd
    g = sp.gcd(to_sympy(alpha.defpoly), to_sympy(p))
    a, b = max(lo, alpha.lo), min(hi, alpha.hi)
    return a <= b and g.count_roots(_q(a), _q(b)) >= 1


def compare_rational(alpha, q):
    """Sign of alpha - q, using only sympy root counts."""
    q = Fraction(q)
    if alpha.defpoly is None:
        return (alpha.lo > q) - (alpha.lo < q)
    if q <= alpha.lo:
        return 1
    if q >= alpha.hi:
        return -1
    p = to_sympy(alpha.defpoly)
    if p.eval(_q(q)) == 0:
        return 0
    below = p.count_roots(_q(alpha.lo), _q(q))
    return -1 if below else 1


def sorted_k(values, k):
    """k-th smallest (1-based), by sorting."""
    return sorted(values)[k - 1]


# numerics ---------------------------------------------------------------------


def _float_coeffs(p):
    return [float(c) for c in p.coeffs]


def _horner(cs, x):
    acc = 0.0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def lipschitz_bound(cs, a, b):
    """sum_k k |a_k| max(|a|,|b|)^(k-1): a bound for |f'| on [a, b]."""
    m = max(abs(a), abs(b))
    return sum(k * abs(c) * m ** (k - 1) for k, c in enumerate(cs) if k)


def lipschitz_extremum(p, a, b, tol=1e-7, transform=None, maximize=False):
    """Global inf (or sup) of f (or transform(f)) on [a, b] within ``tol``.

    Branch and bound: on a cell of width w with midpoint m the value is at
    least f(m) - L w / 2, with L the local Lipschitz bound above. Cells whose
    bound cannot beat the incumbent by more than tol are discarded, so the
    result is within tol of the true extremum (up to float rounding).
    """
    cs = _float_coeffs(p)
    sgn = -1.0 if maximize else 1.0

    def val(x):
        v = _horner(cs, x)
        if transform is not None:
            v = transform(v)
        return sgn * v

    a, b = float(a), float(b)
    best = min(val(a), val(b))
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        mid = (lo + hi) / 2
        fm = val(mid)
        best = min(best, fm)
        lower = fm - lipschitz_bound(cs, lo, hi) * (hi - lo) / 2
        if lower < best - tol:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sgn * best


def dense_samples(p, a, b, n=2000):
    cs = _float_coeffs(p)
    a, b = float(a), float(b)
    return [_horner(cs, a + (b - a) * i / n) for i in range(n + 1)]


# random inputs -----------------------------------------------------------------


def rand_rational(rng, bound=10):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_monic(rng, max_degree=6, bound=10, min_degree=1):
    from signfree import UniPoly

    d = rng.randint(min_degree, max_degree)
    return UniPoly([rand_rational(rng, bound) for _ in range(d)] + [1])


def rng_for(seed):
    return random.Random(seed)
