"""Virtual roots of a monic univariate polynomial and what they give for free.

For monic ``f`` of degree ``d`` the triangle ``rho[level][j]`` (1 <= j <= level
<= d) holds the virtual roots of the normalized derivative ``f^[d-level]``.
Each entry is the minimizer of ``|g|`` on the interval cut out by two
neighbours one level down, on which ``g`` is monotone with a direction fixed
by parity. Nothing here ever asks for the sign of a derivative.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import itertools

from .algebraic import (
    EQ,
    GT,
    LT,
    RealAlgebraic,
    algebraic_compare,
    algebraic_eval,
    algebraic_sign,
    amax,
    amin,
    isolate_real_roots,
)
from .poly import DomainError, UniPoly, cauchy_bound, format_poly, normalized_derivative
from .rational import format_rational

NEG_INF, POS_INF, FINITE = "-inf", "+inf", "finite"


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses that make its answer meaningful."""


class InfinitePointError(PreconditionError):
    pass


@dataclass(frozen=True)
class ExtendedBound:
    kind: str
    value: RealAlgebraic | None = None

    @classmethod
    def finite(cls, v):
        if not isinstance(v, RealAlgebraic):
            v = RealAlgebraic.exact(v)
        return cls(FINITE, v)

    @property
    def is_finite(self):
        return self.kind == FINITE

    def to_json(self):
        return self.value.to_json() if self.is_finite else self.kind

    def __str__(self):
        return repr(self.value) if self.is_finite else self.kind


NegInf = ExtendedBound(NEG_INF)
PosInf = ExtendedBound(POS_INF)


def _bound(v):
    if isinstance(v, ExtendedBound):
        return v
    return ExtendedBound.finite(v)


def _alg(v):
    if isinstance(v, RealAlgebraic):
        return v
    if isinstance(v, ExtendedBound):
        if not v.is_finite:
            raise InfinitePointError(f"{v.kind} is not a point")
        return v.value
    return RealAlgebraic.exact(v)


@lru_cache(maxsize=1024)
def _roots(f):
    return tuple(r for r, _ in isolate_real_roots(f))


def _ext_cmp(a, b):
    if a.kind == b.kind and not a.is_finite:
        return EQ
    if a.kind == NEG_INF or b.kind == POS_INF:
        return LT
    if a.kind == POS_INF or b.kind == NEG_INF:
        return GT
    return algebraic_compare(a.value, b.value)


def interval_min_abs(f, a, b, sigma):
    """The point of ``[a, b]`` where ``|f|`` is smallest, given ``sigma*f' > 0`` inside.

    Infinite ends are replaced by the Cauchy bound of ``f``; the monotonicity
    hypothesis is trusted, not checked.
    """
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    a, b = _bound(a), _bound(b)
    if _ext_cmp(a, b) == GT:
        raise DomainError("interval_min_abs needs a <= b")
    big = cauchy_bound(f)
    for end in (a, b):
        if end.is_finite:
            lo, hi = end.value.interval()
            big = max(big, abs(lo) + 1, abs(hi) + 1)
    av = a.value if a.is_finite else RealAlgebraic.exact(-big)
    bv = b.value if b.is_finite else RealAlgebraic.exact(big)
    if algebraic_compare(av, bv) == EQ:
        return av
    sa = sigma * algebraic_sign(f, av)
    if sa >= 0:
        return av
    sb = sigma * algebraic_sign(f, bv)
    if sb <= 0:
        return bv
    # sigma*f goes from negative to positive: exactly one root strictly inside
    inside = [r for r in _roots(f) if algebraic_compare(av, r) == LT and algebraic_compare(r, bv) == LT]
    if len(inside) != 1:
        raise PreconditionError("f is not monotone on the interval")
    return inside[0]


def direction(level, j):
    """+1 when f^[d-level] increases on the interval defining rho[level][j]."""
    return 1 if (level - j) % 2 == 0 else -1


@dataclass(frozen=True, eq=False)
class VirtualRootTriangle:
    f: UniPoly
    rho: tuple  # rho[level - 1][j - 1]
    bound: Fraction

    @property
    def degree(self):
        return self.f.degree

    def entry(self, level, j):
        """rho[level][j] as an ExtendedBound, with -inf at j = 0 and +inf at j = level + 1."""
        if j == 0:
            return NegInf
        if j == level + 1:
            return PosInf
        return ExtendedBound.finite(self.rho[level - 1][j - 1])

    def top(self):
        return self.rho[-1]

    def derivative(self, level):
        """The polynomial whose virtual roots sit at ``level``."""
        return normalized_derivative(self.f, self.degree - level)

    def entries(self):
        for level, row in enumerate(self.rho, start=1):
            for j, v in enumerate(row, start=1):
                yield level, j, v

    def to_json(self):
        return {
            "degree": self.degree,
            "polynomial": format_poly(self.f),
            "bound": format_rational(self.bound),
            "rho": [[v.to_json() for v in row] for row in self.rho],
        }


def virtual_roots(f):
    """The full triangle of virtual roots of the monic polynomial ``f``."""
    if f.degree < 1:
        raise DomainError("virtual roots need degree >= 1")
    if not f.is_monic():
        raise DomainError("virtual roots are defined for monic polynomials")
    d = f.degree
    rows = []
    below = ()
    for level in range(1, d + 1):
        g = normalized_derivative(f, d - level)
        row = []
        for j in range(1, level + 1):
            lo = ExtendedBound.finite(below[j - 2]) if j >= 2 else NegInf
            hi = ExtendedBound.finite(below[j - 1]) if j <= level - 1 else PosInf
            row.append(interval_min_abs(g, lo, hi, direction(level, j)))
        rows.append(tuple(row))
        below = rows[-1]
    return VirtualRootTriangle(f, tuple(rows), cauchy_bound(f))


def f_star(f):
    """Product of the normalized derivatives f^[0] ... f^[d-1]."""
    out = UniPoly.const(1)
    for k in range(f.degree):
        out = out * normalized_derivative(f, k)
    return out


def interlacing_holds(tri):
    """Each row interleaves with the one below it, weakly."""
    for level in range(2, tri.degree + 1):
        row, below = tri.rho[level - 1], tri.rho[level - 2]
        chain = [row[0]]
        for j in range(level - 1):
            chain += [below[j], row[j + 1]]
        if any(algebraic_compare(x, y) == GT for x, y in zip(chain, chain[1:])):
            return False
    return True


# Budan-Fourier ----------------------------------------------------------------


@dataclass(frozen=True)
class BudanFourier:
    changes: int
    values: tuple  # f^[d](a), ..., f^[0](a)
    lower: ExtendedBound
    upper: ExtendedBound

    def to_json(self):
        return {
            "changes": self.changes,
            "values": [format_rational(v) for v in self.values],
            "bracket": [self.lower.to_json(), self.upper.to_json()],
        }


class DerivativeVanishesError(PreconditionError):
    def __init__(self, k, point):
        super().__init__(f"f^[{k}] vanishes at {format_rational(point)}")
        self.k = k
        self.point = point


def budan_fourier_index(tri, a):
    """Sign changes r along f^[d](a), ..., f(a), with rho[d][d-r] < a < rho[d][d-r+1]."""
    a = Fraction(a)
    d = tri.degree
    values = []
    for k in range(d, -1, -1):
        v = Fraction(1) if k == d else normalized_derivative(tri.f, k)(a)
        if v == 0:
            raise DerivativeVanishesError(k, a)
        values.append(v)
    r = sum(1 for u, v in zip(values, values[1:]) if (u > 0) != (v > 0))
    return BudanFourier(r, tuple(values), tri.entry(d, d - r), tri.entry(d, d - r + 1))


# intermediate values and extrema ---------------------------------------------


def _clamp(a, b, x):
    return amax(a, amin(b, x))


class EmptyIntervalError(PreconditionError):
    """a >= b."""


class NoSignChangeError(PreconditionError):
    """f(a) f(b) is not negative."""


@dataclass(frozen=True)
class IvtWitness:
    mu: tuple
    index: int  # 1-based position of the first exact zero

    @property
    def zero(self):
        return self.mu[self.index - 1]

    def to_json(self):
        return {"mu": [m.to_json() for m in self.mu], "index": self.index, "zero": self.zero.to_json()}


def ivt_witness(tri, a, b):
    """A root of f in [a, b] among the clamped top-row virtual roots."""
    a, b = _alg(a), _alg(b)
    if algebraic_compare(a, b) != LT:
        raise EmptyIntervalError("ivt_witness needs a < b")
    if algebraic_sign(tri.f, a) * algebraic_sign(tri.f, b) >= 0:
        raise NoSignChangeError("f(a) and f(b) do not have strictly opposite signs")
    mu = tuple(_clamp(a, b, r) for r in tri.top())
    for j, m in enumerate(mu, start=1):
        if algebraic_sign(tri.f, m) == 0:
            return IvtWitness(mu, j)
    raise AssertionError("no clamped virtual root is a zero")  # contradicts the theory


def _abs(v):
    return -v if algebraic_compare(v, RealAlgebraic.exact(0)) == LT else v


@dataclass(frozen=True)
class Extrema:
    inf: RealAlgebraic
    sup: RealAlgebraic
    inf_abs: RealAlgebraic
    constant_sign: int

    def to_json(self):
        return {
            "inf": self.inf.to_json(),
            "sup": self.sup.to_json(),
            "inf_abs": self.inf_abs.to_json(),
            "constant_sign": self.constant_sign,
        }


def interval_extrema(tri, a, b):
    """inf f, sup f and inf |f| over [a, b], read off the clamped virtual roots."""
    a, b = _alg(a), _alg(b)
    if algebraic_compare(a, b) != LT:
        raise DomainError("interval_extrema needs a < b")
    f, d = tri.f, tri.degree
    ends = [algebraic_eval(f, a), algebraic_eval(f, b)]
    nus = [_clamp(a, b, r) for r in tri.rho[d - 2]] if d >= 2 else []
    values = ends + [algebraic_eval(f, n) for n in nus]
    lo, hi = amin(*values), amax(*values)
    mus = [_clamp(a, b, r) for r in tri.top()]
    inf_abs = amin(*[_abs(v) for v in ends + [algebraic_eval(f, m) for m in mus]])
    zero = RealAlgebraic.exact(0)
    if algebraic_compare(lo, zero) == GT:
        s = 1
    elif algebraic_compare(hi, zero) == LT:
        s = -1
    else:
        s = 0
    return Extrema(lo, hi, inf_abs, s)


# change of variable -----------------------------------------------------------


def rescaled_polynomial(f, c):
    """c^d f(X / c), computed coefficientwise so that c = 0 gives X^d."""
    c = Fraction(c)
    d = f.degree
    return UniPoly([coef * c ** (d - k) for k, coef in enumerate(f.coeffs)])


def rescale_roots(tri, c):
    """Triangle of c^d f(X/c) from that of f, checked against a fresh computation."""
    c = Fraction(c)
    g = rescaled_polynomial(tri.f, c)
    fresh = virtual_roots(g)
    predicted = []
    for row in tri.rho:
        scaled = [r.scale(c) for r in row]
        predicted.append(tuple(scaled if c >= 0 else scaled[::-1]))
    for want_row, got_row in zip(predicted, fresh.rho):
        for want, got in zip(want_row, got_row):
            if algebraic_compare(want, got) != EQ:
                raise AssertionError("rescaled virtual roots disagree with direct computation")
    return fresh


# sign tables ------------------------------------------------------------------

EXACT, COVERED_UP_TO_VR = "Exact", "CoveredUpToVr"


@dataclass(frozen=True)
class Gap:
    lower: ExtendedBound
    upper: ExtendedBound
    sign: int
    flag: str = EXACT

    def to_json(self):
        return {"gap": [self.lower.to_json(), self.upper.to_json()], "sign": self.sign, "flag": self.flag}


@dataclass(frozen=True)
class Point:
    at: RealAlgebraic
    sign: int
    flag: str = EXACT

    def to_json(self):
        return {"point": self.at.to_json(), "sign": self.sign, "flag": self.flag}


@dataclass(frozen=True)
class SignTable:
    boundaries: tuple
    entries: tuple

    def to_json(self):
        return [e.to_json() for e in self.entries]


def sign_table(tri):
    """Signs of f on the regions cut out by the top-row virtual roots."""
    d, f = tri.degree, tri.f
    top = tri.top()
    # indices j (1-based) where the run of equal roots ends
    groups = []
    for j, r in enumerate(top, start=1):
        if groups and algebraic_compare(groups[-1][1], r) == EQ:
            groups[-1] = (j, groups[-1][1])
        else:
            groups.append((j, r))
    entries = []
    lower = NegInf
    prev_j = 0
    for j, r in groups:
        entries.append(Gap(lower, ExtendedBound.finite(r), (-1) ** (d - prev_j)))
        entries.append(Point(r, algebraic_sign(f, r)))
        lower, prev_j = ExtendedBound.finite(r), j
    entries.append(Gap(lower, PosInf, (-1) ** (d - prev_j)))
    return SignTable(tuple(r for _, r in groups), tuple(entries))


# the defining inequality system ----------------------------------------------


@dataclass(frozen=True)
class Inequality:
    name: str
    sign: int  # exact sign of the left-hand side
    relation: str  # "<=", ">=" or "="

    @property
    def holds(self):
        return {"<=": self.sign <= 0, ">=": self.sign >= 0, "=": self.sign == 0}[self.relation]


def _diff_sign(x, y):
    return algebraic_compare(x, y)


def defining_inequalities(tri):
    """Sign-free inequalities that pin each rho[level][j] down, with exact truth values.

    Names follow ``vr_{level,j,k}``. With x the entry, g its polynomial and
    the neighbours a < b one level down, the system is: a <= x <= b,
    (x-a) g(a), (x-b) g(b), (x-a) g(x), (x-b) g(x) each of known sign, the
    sign being fixed by the monotonicity direction. A missing neighbour is
    replaced by the sign of g(x) itself.
    """
    out = []
    for level, j, x in tri.entries():
        g = tri.derivative(level)
        sigma = direction(level, j)
        lo, hi = tri.entry(level - 1, j - 1), tri.entry(level - 1, j)
        if level == 1:
            out.append(Inequality("vr_{1,1}", algebraic_sign(g, x), "="))
            continue
        tag = f"vr_{{{level},{j},"
        # sigma (x-a) g(a) <= 0 and sigma (x-a) g(x) <= 0
        # sigma (b-x) g(b) >= 0 and sigma (b-x) g(x) >= 0; (x-b) flips the sign
        want_lo = "<=" if sigma > 0 else ">="
        want_hi = "<=" if sigma > 0 else ">="
        if lo.is_finite:
            out.append(Inequality(tag + "0lo}", _diff_sign(x, lo.value), ">="))
            out.append(Inequality(tag + "a}", _diff_sign(x, lo.value) * algebraic_sign(g, lo.value), want_lo))
            out.append(Inequality(tag + "ax}", _diff_sign(x, lo.value) * algebraic_sign(g, x), want_lo))
        else:
            # (x - a) is positive: sigma g(x) <= 0
            out.append(Inequality(tag + "inf}", sigma * algebraic_sign(g, x), "<="))
        if hi.is_finite:
            out.append(Inequality(tag + "0hi}", _diff_sign(x, hi.value), "<="))
            out.append(Inequality(tag + "b}", _diff_sign(x, hi.value) * algebraic_sign(g, hi.value), want_hi))
            out.append(Inequality(tag + "bx}", _diff_sign(x, hi.value) * algebraic_sign(g, x), want_hi))
        else:
            out.append(Inequality(tag + "inf}", sigma * algebraic_sign(g, x), ">="))
    return out


def _quartic_items(tri, printed):
    """The degree-4 system for rho_{1,1}, rho_{2,*}, rho_{3,2}, rho_{3,3}, rho_{4,3}."""
    if tri.degree != 4:
        raise DomainError("the quartic system needs degree 4")
    r = lambda level, j: tri.rho[level - 1][j - 1]  # noqa: E731
    f2, f1, f0 = tri.derivative(2), tri.derivative(3), tri.f
    s = algebraic_sign
    c = _diff_sign
    r11, r21, r22, r32, r33, r43 = r(1, 1), r(2, 1), r(2, 2), r(3, 2), r(3, 3), r(4, 3)
    a3 = -tri.f.coeffs[3]
    items = [
        ("vr_{1,1}", c(r11, RealAlgebraic.exact(a3 / 4)), "="),
        ("vr_{2,1,0}", c(r21, r11), "<="),
        ("vr_{2,1,1}", c(r21, r11) * s(f2, r11), "<=" if printed else ">="),
        ("vr_{2,1,2}", c(r21, r11) * s(f2, r21), ">="),
        ("vr_{2,1,3}", s(f2, r21), ">="),
        ("vr_{2,2,0}", c(r22, r11), ">="),
        ("vr_{2,2,1}", c(r22, r11) * s(f2, r11), ">=" if printed else "<="),
        ("vr_{2,2,2}", c(r22, r11) * s(f2, r22), "<="),
        ("vr_{2,2,3}", s(f2, r22), ">="),
        ("vr_{3,3,0}", c(r33, r22), ">="),
        (
            "vr_{3,3,1}",
            c(r33, r22) * (s(f1, r11) if printed else s(f1, r22)),
            ">=" if printed else "<=",
        ),
        ("vr_{3,3,2}", c(r33, r22) * s(f1, r33), "<="),
        ("vr_{3,3,3}", s(f1, r33), ">="),
        ("vr_{3,2,0}a", c(r32, r21), ">="),
        ("vr_{3,2,0}b", c(r32, r22), "<="),
        ("vr_{3,2,1}", c(r32, r21) * s(f1, r21), ">="),
        ("vr_{3,2,2}", c(r32, r22) * s(f1, r22), ">="),
        ("vr_{3,2,3}", c(r32, r21) * s(f1, r32), ">="),
        ("vr_{3,2,4}", c(r32, r22) * s(f1, r32), ">="),
        ("vr_{4,3,0}a", c(r43, r32), ">="),
        ("vr_{4,3,0}b", c(r43, r33), "<="),
        ("vr_{4,3,1}", c(r43, r32) * s(f0, r32), ">="),
        ("vr_{4,3,2}", c(r43, r33) * s(f0, r33), ">="),
        ("vr_{4,3,3}", c(r43, r32) * s(f0, r43), ">="),
        ("vr_{4,3,4}", c(r43, r33) * s(f0, r43), ">="),
    ]
    return [Inequality(n, sg, rel) for n, sg, rel in items]


def quartic_inequalities(tri):
    """The degree-4 rule system, with the three sign corrections applied."""
    return _quartic_items(tri, printed=False)


def quartic_inequalities_as_printed(tri):
    """Same system with the signs and the stray index of the printed version.

    Kept so tests can show that version is refuted (for example when
    f^[2] = X^2 - 1).
    """
    return _quartic_items(tri, printed=True)


def tri_k(k, values):
    """k-th smallest of the values: inf over k-subsets of their sup."""
    return amin(*[amax(*sub) for sub in itertools.combinations(values, k)])
