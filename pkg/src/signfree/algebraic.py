"""Real algebraic numbers as exact rationals or isolating intervals.

All decisions (sign, order, equality) are exact. Equality of two isolated
values goes through the gcd of their defining polynomials; interval
refinement alone is only ever used to separate values already known to be
distinct.
"""

from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    DomainError,
    UniPoly,
    cauchy_bound,
    format_poly,
    poly_gcd,
    squarefree_factorization,
    squarefree_part,
    sturm_count,
    sturm_sequence,
)
from .rational import format_rational, sign

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True, eq=False)
class RealAlgebraic:
    """Either ``ExactRational(q)`` (``defpoly is None``) or ``Isolated(defpoly, lo, hi)``.

    For isolated values ``defpoly`` is monic and squarefree, has exactly one
    root in the open interval ``(lo, hi)``, does not vanish at either end and
    has no rational root inside the interval.
    """

    lo: Fraction
    hi: Fraction
    defpoly: UniPoly | None = None

    # constructors ---------------------------------------------------------

    @classmethod
    def exact(cls, q):
        q = Fraction(q)
        return cls(q, q, None)

    @classmethod
    def isolated(cls, defpoly, lo, hi):
        """Validate an isolating interval, collapsing to a rational when possible."""
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise DomainError("isolating interval needs lo < hi")
        p = squarefree_part(defpoly)
        if p.degree < 1:
            raise DomainError("defining polynomial must have positive degree")
        if p(lo) == 0 or p(hi) == 0:
            raise DomainError("defining polynomial vanishes at an interval end")
        if sturm_count(p, lo, hi) != 1:
            raise DomainError("interval does not isolate exactly one root")
        return _finish_single(p, lo, hi)

    @classmethod
    def root_of(cls, p, index):
        """The ``index``-th distinct real root of ``p`` in increasing order."""
        roots = isolate_real_roots(p)
        return roots[index][0]

    # accessors ------------------------------------------------------------

    @property
    def is_rational(self):
        return self.defpoly is None

    @property
    def value(self):
        """The rational value; only for exact rationals."""
        if self.defpoly is not None:
            raise DomainError("not a rational value")
        return self.lo

    def interval(self):
        return self.lo, self.hi

    def refine(self, width):
        """Copy whose isolating interval is narrower than ``width``."""
        if self.defpoly is None:
            return self
        lo, hi = _bisect_until(self.defpoly, self.lo, self.hi, Fraction(width))
        return RealAlgebraic(lo, hi, self.defpoly)

    def approx(self, tol=Fraction(1, 10**12)):
        r = self.refine(tol)
        return (r.lo + r.hi) / 2

    def __float__(self):
        return float(self.approx())

    def scale(self, c):
        """Exact product ``c * self`` for rational ``c``."""
        c = Fraction(c)
        if self.defpoly is None:
            return RealAlgebraic.exact(c * self.lo)
        if c == 0:
            return RealAlgebraic.exact(0)
        p = self.defpoly.compose_affine(1 / c, 0).monic()
        lo, hi = sorted((c * self.lo, c * self.hi))
        return RealAlgebraic(lo, hi, p)

    def __neg__(self):
        return self.scale(-1)

    def translate(self, q):
        """Exact sum ``self + q`` for rational ``q``."""
        q = Fraction(q)
        if self.defpoly is None:
            return RealAlgebraic.exact(self.lo + q)
        return RealAlgebraic(self.lo + q, self.hi + q, self.defpoly.shift(-q))

    # ordering -------------------------------------------------------------

    def _cmp(self, other):
        if not isinstance(other, RealAlgebraic):
            other = RealAlgebraic.exact(other)
        return algebraic_compare(self, other)

    def __eq__(self, other):
        if not isinstance(other, (RealAlgebraic, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == EQ

    def __lt__(self, other):
        return self._cmp(other) == LT

    def __le__(self, other):
        return self._cmp(other) != GT

    def __gt__(self, other):
        return self._cmp(other) == GT

    def __ge__(self, other):
        return self._cmp(other) != LT

    __hash__ = None

    def __repr__(self):
        if self.defpoly is None:
            return f"RealAlgebraic({format_rational(self.lo)})"
        return (
            f"RealAlgebraic(root of {format_poly(self.defpoly)} in "
            f"({format_rational(self.lo)}, {format_rational(self.hi)}))"
        )

    def to_json(self):
        if self.defpoly is None:
            return {"rational": format_rational(self.lo)}
        return {
            "defpoly": format_poly(self.defpoly),
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
        }

    @classmethod
    def from_json(cls, doc):
        from .poly import parse_poly
        from .rational import parse_rational

        if "rational" in doc:
            return cls.exact(parse_rational(doc["rational"]))
        return cls.isolated(
            parse_poly(doc["defpoly"]), parse_rational(doc["lo"]), parse_rational(doc["hi"])
        )


# isolation ----------------------------------------------------------------


def _bisect_until(p, lo, hi, width):
    """Halve (lo, hi) around the unique simple root of p until narrower than width."""
    slo = sign(p(lo))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        sm = sign(p(mid))
        if sm == 0:
            # only reachable for a rational root, which callers exclude
            raise ArithmeticError("bisection hit an exact root")
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _finish_single(p, lo, hi):
    """Given exactly one simple root of squarefree p in (lo, hi), build the value.

    If the root is rational r = u/v then v divides the leading coefficient L
    of the primitive integer form, so L*r is an integer; once the interval is
    narrower than 1/L there is at most one candidate left to test.
    """
    pint = p.primitive_integer()
    lead = int(pint.lead)
    slo = sign(p(lo))
    while hi - lo >= Fraction(1, lead):
        mid = (lo + hi) / 2
        sm = sign(p(mid))
        if sm == 0:
            return RealAlgebraic.exact(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    # integers m with lo < m/lead < hi: at most one
    m = (lo * lead).__floor__() + 1
    cand = Fraction(m, lead)
    if lo < cand < hi and p(cand) == 0:
        return RealAlgebraic.exact(cand)
    return RealAlgebraic(lo, hi, p.monic())


def _isolate_squarefree(p):
    """Distinct real roots of a squarefree polynomial, increasing."""
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(p) + 1
    out = []

    def split_point(lo, hi):
        for k in (2, 3, 5, 7, 11, 13):
            for t in range(1, k):
                s = lo + (hi - lo) * Fraction(t, k)
                if p(s) != 0:
                    return s
        raise ArithmeticError("no regular split point found")  # pragma: no cover

    def rec(lo, hi, n):
        if n == 0:
            return
        if n == 1:
            out.append(_finish_single(p, lo, hi))
            return
        mid = (lo + hi) / 2
        if p(mid) == 0:
            left = sturm_count(p, lo, mid, seq) - 1
            right = n - left - 1
            # step away from the exact root on both sides
            eps = (hi - lo) / 4
            while True:
                a, b = mid - eps, mid + eps
                if (
                    p(a) != 0
                    and p(b) != 0
                    and sturm_count(p, a, b, seq) == 1
                ):
                    break
                eps /= 2
            rec(lo, a, sturm_count(p, lo, a, seq))
            out.append(RealAlgebraic.exact(mid))
            rec(b, hi, sturm_count(p, b, hi, seq))
            return
        left = sturm_count(p, lo, mid, seq)
        rec(lo, mid, left)
        rec(mid, hi, n - left)

    rec(-bound, bound, sturm_count(p, -bound, bound, seq))
    return out


def isolate_real_roots(f):
    """Distinct real roots of ``f`` in increasing order with their multiplicities."""
    if f.is_zero():
        raise DomainError("the zero polynomial has no isolated roots")
    roots = []
    for g, mult in squarefree_factorization(f):
        for r in _isolate_squarefree(g):
            roots.append((r, mult))
    roots.sort(key=_sort_key)
    return roots


def _sort_key(pair):
    # factors are coprime, so values are distinct; sort by exact comparison
    from functools import cmp_to_key

    return cmp_to_key(algebraic_compare)(pair[0])


# sign and comparison ------------------------------------------------------


def _is_root_of(g, alpha):
    return g.degree >= 1 and sturm_count(g, alpha.lo, alpha.hi) == 1


def algebraic_sign(g, alpha):
    """Exact sign of g(alpha)."""
    if g.is_zero():
        return 0
    if alpha.defpoly is None:
        return sign(g(alpha.lo))
    if g.degree < 1:
        return sign(g.lead)
    h = poly_gcd(g, alpha.defpoly)
    if h.degree >= 1 and _is_root_of(h, alpha):
        return 0
    p, lo, hi = alpha.defpoly, alpha.lo, alpha.hi
    seq = sturm_sequence(squarefree_part(g))
    while sturm_count(seq[0], lo, hi, seq) != 0:
        lo, hi = _bisect_until(p, lo, hi, (hi - lo) / 2)
    return sign(g(hi))


def _cmp_rational(alpha, q):
    p, lo, hi = alpha.defpoly, alpha.lo, alpha.hi
    # alpha is irrational, so alpha != q and the loop terminates
    while lo < q < hi:
        lo, hi = _bisect_until(p, lo, hi, (hi - lo) / 2)
    return GT if q <= lo else LT


def algebraic_compare(alpha, beta):
    """Exact order of two real algebraic numbers: LT (-1), EQ (0) or GT (1)."""
    if alpha.defpoly is None and beta.defpoly is None:
        return sign(alpha.lo - beta.lo)
    if beta.defpoly is None:
        return _cmp_rational(alpha, beta.lo)
    if alpha.defpoly is None:
        return -_cmp_rational(beta, alpha.lo)
    if alpha.hi <= beta.lo:
        return LT
    if beta.hi <= alpha.lo:
        return GT
    pa, pb = alpha.defpoly, beta.defpoly
    alo, ahi, blo, bhi = alpha.lo, alpha.hi, beta.lo, beta.hi
    g = poly_gcd(pa, pb)
    if g.degree >= 1 and _is_root_of(g, alpha) and _is_root_of(g, beta):
        # both are roots of pa; alpha is the only root of pa in (alo, ahi)
        while True:
            if alo < blo and bhi < ahi:
                return EQ
            if bhi <= alo or ahi <= blo:
                break
            blo, bhi = _bisect_until(pb, blo, bhi, (bhi - blo) / 2)
    while not (ahi <= blo or bhi <= alo):
        if ahi - alo >= bhi - blo:
            alo, ahi = _bisect_until(pa, alo, ahi, (ahi - alo) / 2)
        else:
            blo, bhi = _bisect_until(pb, blo, bhi, (bhi - blo) / 2)
    return LT if ahi <= blo else GT


def amax(*values):
    best = values[0]
    for v in values[1:]:
        if algebraic_compare(v, best) == GT:
            best = v
    return best


def amin(*values):
    best = values[0]
    for v in values[1:]:
        if algebraic_compare(v, best) == LT:
            best = v
    return best


# evaluation ---------------------------------------------------------------


def _interval_eval(g, lo, hi):
    """Enclosure of g over [lo, hi] by interval Horner."""
    elo = ehi = Fraction(0)
    for c in reversed(g.coeffs):
        prods = (elo * lo, elo * hi, ehi * lo, ehi * hi)
        elo, ehi = min(prods) + c, max(prods) + c
    return elo, ehi


def _charpoly(matrix):
    """Characteristic polynomial det(tI - M) by Faddeev-LeVerrier."""
    n = len(matrix)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m_k = [[Fraction(0)] * n for _ in range(n)]
    c_prev = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            m_k = [row[:] for row in ident]
        else:
            am = [
                [sum(matrix[i][t] * m_k[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)
            ]
            m_k = [[am[i][j] + c_prev * ident[i][j] for j in range(n)] for i in range(n)]
        am = [
            [sum(matrix[i][t] * m_k[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        c_prev = -sum(am[i][i] for i in range(n)) / k
        coeffs[n - k] = c_prev
    return UniPoly(coeffs)


def _mult_matrix(g, p):
    n = p.degree
    cols = []
    xk = UniPoly((1,))
    for _ in range(n):
        r = (g * xk) % p
        cols.append([r.coeffs[i] if i < len(r.coeffs) else Fraction(0) for i in range(n)])
        xk = xk * UniPoly.x()
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def algebraic_eval(g, alpha):
    """The real algebraic number g(alpha)."""
    if alpha.defpoly is None:
        return RealAlgebraic.exact(g(alpha.lo))
    if g.degree < 1:
        return RealAlgebraic.exact(g.lead if g else 0)
    p = alpha.defpoly
    gr = g % p
    if gr.degree < 1:
        return RealAlgebraic.exact(gr.lead if gr else 0)
    chi = _charpoly(_mult_matrix(gr, p))
    cands = [r for r, _ in isolate_real_roots(chi)]
    lo, hi = alpha.lo, alpha.hi
    while True:
        elo, ehi = _interval_eval(gr, lo, hi)
        hits = [c for c in cands if not (c.hi < elo or ehi < c.lo)]
        if len(hits) == 1:
            return hits[0]
        lo, hi = _bisect_until(p, lo, hi, (hi - lo) / 2)
        width = hi - lo
        cands = [c if c.hi - c.lo < width else c.refine(width) for c in cands]
