"""Lazy formal power series over Q ordered with epsilon a positive infinitesimal.

There is no sign test on this ring. The sign potential at depth k reads
the first nonzero coefficient among c_0..c_k; it is 0 when none has shown
up yet, which says nothing about the series being zero. Every order
predicate therefore takes a probing depth and may answer Unknown.

Coefficient rules only see the already computed prefix of their own series,
which is how self-referential constructions (inverse, Newton) stay well
founded.
"""

from dataclasses import dataclass
from fractions import Fraction
import threading

from .rational import format_rational, sign

YES, NO, UNKNOWN = "yes", "no", "unknown"


class NotAUnitError(ArithmeticError):
    """The constant coefficient is zero, so the series has no inverse."""


class SeriesPreconditionError(ValueError):
    def __init__(self, message, depth=None):
        super().__init__(message if depth is None else f"{message} (depth {depth})")
        self.depth = depth


class LazySeries:
    """sum c_k e^k with c_k produced on demand by ``rule(k, prefix)``.

    ``prefix`` is the tuple of the coefficients c_0..c_{k-1} of this same
    series. Computed coefficients and sign potentials are memoized under a
    lock, so a series may be probed from several threads.
    """

    __slots__ = ("_rule", "_coeffs", "_kappa", "_lock", "name")

    def __init__(self, rule, name=None):
        self._rule = rule
        self._coeffs = []
        self._kappa = []
        self._lock = threading.RLock()
        self.name = name

    # construction ------------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, name=None):
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(lambda k, _: cs[k] if k < len(cs) else Fraction(0), name)

    @classmethod
    def constant(cls, c):
        return cls.from_coeffs([c])

    @classmethod
    def epsilon(cls, power=1):
        return cls.from_coeffs([0] * power + [1])

    @classmethod
    def geometric(cls):
        """1 / (1 - e)."""
        return cls(lambda k, _: Fraction(1), "geom")

    # probing -----------------------------------------------------------------

    def coeff(self, k):
        if k < 0:
            return Fraction(0)
        with self._lock:
            while len(self._coeffs) <= k:
                n = len(self._coeffs)
                self._coeffs.append(Fraction(self._rule(n, tuple(self._coeffs))))
            return self._coeffs[k]

    def coeffs(self, n):
        """The first n coefficients."""
        if n <= 0:
            return []
        self.coeff(n - 1)
        with self._lock:
            return list(self._coeffs[:n])

    def kappa(self, k):
        """Sign potential at depth k."""
        if k < 0:
            return 0
        with self._lock:
            while len(self._kappa) <= k:
                n = len(self._kappa)
                prev = self._kappa[-1] if self._kappa else 0
                self._kappa.append(prev if prev != 0 else sign(self.coeff(n)))
            return self._kappa[k]

    def valuation(self, fuel):
        """Index of the first nonzero coefficient, or None if none up to ``fuel``."""
        for k in range(fuel + 1):
            if self.coeff(k) != 0:
                return k
        return None

    def positive(self, fuel):
        """YES once a positive leading coefficient shows up by ``fuel``, NO for a negative one."""
        s = self.kappa(fuel)
        return YES if s > 0 else NO if s < 0 else UNKNOWN

    # ring operations -----------------------------------------------------------

    def __add__(self, other):
        other = _as_series(other)
        return LazySeries(lambda k, _: self.coeff(k) + other.coeff(k))

    __radd__ = __add__

    def __neg__(self):
        return LazySeries(lambda k, _: -self.coeff(k))

    def __sub__(self, other):
        other = _as_series(other)
        return LazySeries(lambda k, _: self.coeff(k) - other.coeff(k))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return LazySeries(lambda k, _: c * self.coeff(k))
        return LazySeries(lambda k, _: sum((self.coeff(i) * other.coeff(k - i) for i in range(k + 1)), Fraction(0)))

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return LazySeries(lambda k, _: self.coeff(k) / c)

    def __pow__(self, n):
        out = LazySeries.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, m):
        """Multiply by e^m; a negative m drops the first |m| coefficients."""
        return LazySeries(lambda k, _: self.coeff(k - m))

    def __repr__(self):
        return f"LazySeries({format_series(self, 6)})"


def _as_series(x):
    return x if isinstance(x, LazySeries) else LazySeries.constant(x)


def format_series(s, n):
    """``c0 + c1*e + c2*e^2 + ... + O(e^n)`` with the zero terms left out."""
    parts = []
    for k, c in enumerate(s.coeffs(n)):
        if c == 0:
            continue
        mono = "" if k == 0 else "e" if k == 1 else f"e^{k}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        parts.append(("-" if c < 0 else "+", body))
    tail = f"O(e^{n})"
    if not parts:
        return tail
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sg, body in parts[1:]:
        text += f" {sg} {body}"
    return f"{text} + {tail}"


def series_from_poly(p):
    """LazySeries of a polynomial in ``e`` (UniPoly or text)."""
    from .poly import UniPoly, parse_poly

    if isinstance(p, str):
        p = parse_poly(p, var="e")
    if not isinstance(p, UniPoly):
        raise TypeError("expected a polynomial in e")
    return LazySeries.from_coeffs(p.coeffs)


# sign potentials and lattice operations ----------------------------------------


def series_sign_potential(xi, k):
    return xi.kappa(k)


def series_abs(xi):
    return LazySeries(lambda k, _: xi.kappa(k) * xi.coeff(k))


def series_sup(xi, zeta):
    return (xi + zeta + series_abs(xi - zeta)) / 2


def series_inf(xi, zeta):
    return (xi + zeta - series_abs(xi - zeta)) / 2


# units ---------------------------------------------------------------------------


def series_inverse(xi):
    """Inverse of a series whose constant coefficient is visibly nonzero."""
    x0 = xi.coeff(0)
    if x0 == 0:
        raise NotAUnitError("constant coefficient is 0: not a unit at depth 0")

    def rule(k, prev):
        if k == 0:
            return 1 / x0
        return -sum((xi.coeff(i) * prev[k - i] for i in range(1, k + 1)), Fraction(0)) / x0

    return LazySeries(rule)


# FRAC ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Unknown:
    """No verdict within the fuel; ``prefix`` holds what is already determined."""

    depth: int
    prefix: tuple = ()


def series_frac(xi, zeta, fuel):
    """The rho with rho*zeta = xi^2 and 0 <= rho <= xi, assuming 0 <= xi <= zeta.

    The hypothesis is probed up to ``fuel``; a violation raises with its
    depth. Until the valuation of zeta shows up every coefficient of rho is
    0, so exhausting the fuel returns Unknown with that zero prefix.
    """
    gap = zeta - xi
    v = None
    for k in range(fuel + 1):
        if xi.kappa(k) < 0:
            raise SeriesPreconditionError("xi >= 0 fails", k)
        if gap.kappa(k) < 0:
            raise SeriesPreconditionError("xi <= zeta fails", k)
        if v is None and zeta.kappa(k) != 0:
            v = k
            if xi.kappa(k - 1) != 0:  # cannot happen when 0 <= xi <= zeta
                raise SeriesPreconditionError("xi has smaller valuation than zeta", k)
    if v is None:
        return Unknown(fuel, tuple(Fraction(0) for _ in range(fuel + 1)))
    z_v = zeta.coeff(v)
    unit = zeta.shift(-v) / z_v  # 1 + e*alpha
    beta = xi.shift(-v)
    return (beta * beta * series_inverse(unit)).shift(v) / z_v


# OTF -----------------------------------------------------------------------------

LEFT, RIGHT = "Left", "Right"


def series_otf_split(xi, zeta, k):
    """Which summand of a sum that is positive at depth k is itself positive."""
    total = xi + zeta
    if total.kappa(k) != 1:
        return UNKNOWN
    for j in range(k + 1):
        a, b = xi.coeff(j), zeta.coeff(j)
        if a == 0 and b == 0:
            continue
        # first index where something shows: the sum is >= 0 here
        return LEFT if a > 0 else RIGHT
    raise AssertionError("positive sum with no nonzero coefficient")  # unreachable


# Newton-Hensel -------------------------------------------------------------------


def _trunc_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def _trunc_eval(poly, t, n):
    """P(t) mod e^n with P given by truncated coefficient lists (Horner)."""
    acc = [Fraction(0)] * n
    for c in reversed(poly):
        acc = _trunc_mul(acc, t, n)
        acc = [x + y for x, y in zip(acc, c[:n] + [Fraction(0)] * (n - len(c[:n])))]
    return acc


def _trunc_inverse(a, n):
    out = [1 / a[0]]
    for k in range(1, n):
        out.append(-sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0)) / a[0])
    return out


def _derivative(poly):
    return [[c * i for c in coeffs] for i, coeffs in enumerate(poly)][1:]


def hensel_newton_root(P):
    """The root with positive valuation of P, a list of LazySeries coefficients (low degree first).

    Requires P(0) to vanish at depth 0 and P'(0) to be a unit at depth 0.
    The root is built by Newton's iteration on truncations, doubling the
    precision at each step.
    """
    P = [_as_series(c) for c in P]
    if len(P) < 2:
        raise SeriesPreconditionError("polynomial of degree >= 1 required")
    if P[0].coeff(0) != 0:
        raise SeriesPreconditionError("P(0) is not infinitesimal at depth 0", 0)
    if P[1].coeff(0) == 0:
        raise SeriesPreconditionError("P'(0) is not a unit at depth 0", 0)

    state = {"prec": 1, "root": [Fraction(0)]}
    lock = threading.Lock()

    def lift_to(n):
        with lock:
            while state["prec"] < n:
                m = 2 * state["prec"]
                t = state["root"] + [Fraction(0)] * (m - state["prec"])
                coeffs = [c.coeffs(m) for c in P]
                value = _trunc_eval(coeffs, t, m)
                slope = _trunc_eval(_derivative(coeffs), t, m)
                step = _trunc_mul(value, _trunc_inverse(slope, m), m)
                state["root"] = [x - y for x, y in zip(t, step)]
                state["prec"] = m
            return state["root"]

    return LazySeries(lambda k, _: lift_to(k + 1)[k], "newton")


def series_poly_eval(P, xi):
    """P(xi) for P a list of LazySeries coefficients."""
    acc = LazySeries.constant(0)
    for c in reversed(P):
        acc = acc * xi + _as_series(c)
    return acc


# Laurent series ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LaurentElement:
    """e^shift * body, an element of Q((e))."""

    shift: int
    body: LazySeries

    def coeff(self, k):
        return self.body.coeff(k - self.shift)

    def kappa(self, k):
        return self.body.kappa(k - self.shift)

    def valuation(self, fuel):
        v = self.body.valuation(fuel)
        return None if v is None else v + self.shift

    def __add__(self, other):
        m = min(self.shift, other.shift)
        a = self.body.shift(self.shift - m)
        b = other.body.shift(other.shift - m)
        return LaurentElement(m, a + b)

    def __neg__(self):
        return LaurentElement(self.shift, -self.body)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return LaurentElement(self.shift + other.shift, self.body * other.body)

    def equals(self, other, fuel):
        """NO when a shifted coefficient differs up to depth ``fuel``, else UNKNOWN."""
        if self.shift <= other.shift:
            lhs, rhs = self.body, other.body.shift(other.shift - self.shift)
        else:
            lhs, rhs = self.body.shift(self.shift - other.shift), other.body
        for k in range(fuel + 1):
            if lhs.coeff(k) != rhs.coeff(k):
                return NO
        return UNKNOWN

    def inverse(self, fuel):
        """Inverse once the valuation is visible within ``fuel``, else Unknown."""
        v = self.body.valuation(fuel)
        if v is None:
            return Unknown(fuel)
        return LaurentElement(-(self.shift + v), series_inverse(self.body.shift(-v)))
