"""Square roots of a complex number a + ib with exact verification.

The real and imaginary parts u, v of a root are real algebraic numbers of
degree at most 4. Identities are checked symbolically in the ring
Q[s, u] / (s^2 - (a^2+b^2), u^2 - (a+s)/2), real and imaginary parts
separately; an identity there holds at the real values too.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebraic import RealAlgebraic, isolate_real_roots
from .poly import UniPoly


class Quad:
    """x + y*t with t^2 = d; coefficients live one level down (Fraction at the bottom)."""

    __slots__ = ("x", "y", "d", "level")

    def __init__(self, x, y, d):
        self.x, self.y, self.d = x, y, d
        self.level = 1 + (d.level if isinstance(d, Quad) else 0)

    def _lift(self, other):
        if isinstance(other, Quad) and other.level == self.level:
            return other
        return Quad(other, 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return Quad(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.x, -self.y, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Quad(self.x * o.x + self.y * o.y * self.d, self.x * o.y + self.y * o.x, self.d)

    __rmul__ = __mul__

    def inverse(self):
        # (x + yt)(x - yt) = x^2 - d y^2 lives one level down
        n = self.x * self.x - self.y * self.y * self.d
        inv = n.inverse() if isinstance(n, Quad) else 1 / Fraction(n)
        return Quad(self.x * inv, -self.y * inv, self.d)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def is_zero(self):
        return _is_zero(self.x) and _is_zero(self.y)


def _is_zero(x):
    return x.is_zero() if isinstance(x, Quad) else x == 0


def _largest_root(p):
    return isolate_real_roots(p)[-1][0]


@dataclass(frozen=True)
class CsqrtCover:
    a: Fraction
    b: Fraction
    u: RealAlgebraic
    v: RealAlgebraic
    modulus: RealAlgebraic  # sqrt(a^2 + b^2)
    f1: tuple  # coefficients (low to high) of (Z - z1)(Z - conj z1), RealAlgebraic
    f2: tuple  # same for -z1
    square_ok: bool  # z1^2 = a + ib in the tower
    sign_ok: bool  # u v b >= 0
    identity_ok: bool  # g(Z^2) = f1 f2

    def to_json(self):
        return {
            "u": self.u.to_json(),
            "v": self.v.to_json(),
            "modulus": self.modulus.to_json(),
            "f1": [c.to_json() for c in self.f1],
            "f2": [c.to_json() for c in self.f2],
            "square_ok": self.square_ok,
            "sign_ok": self.sign_ok,
            "identity_ok": self.identity_ok,
        }


def _tower(a, b):
    """Symbolic u, v, s in one tower ring."""
    norm = a * a + b * b
    if b != 0:
        s = Quad(Fraction(0), Fraction(1), norm)
        u = Quad(0, 1, (s + a) * Fraction(1, 2))
        return u, b / (2 * u), u._lift(s)
    if a >= 0:  # s = a, u = sqrt(a), v = 0
        u = Quad(Fraction(0), Fraction(1), a)
        return u, u._lift(0), u._lift(a)
    v = Quad(Fraction(0), Fraction(1), -a)  # u = 0, v = sqrt(-a)
    return v._lift(0), v, v._lift(-a)


def _poly_mul(p, q):
    out = [None] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = x * y if out[i + j] is None else out[i + j] + x * y
    return out


def complex_sqrt_cover(a, b):
    """A square root z1 = u + iv of a + ib, with the cover identity checked exactly."""
    a, b = Fraction(a), Fraction(b)
    u_alg = _largest_root(UniPoly([-b * b, 0, -4 * a, 0, 4]))
    v_alg = _largest_root(UniPoly([-b * b, 0, 4 * a, 0, 4]))
    if b < 0:
        v_alg = -v_alg
    mod = _largest_root(UniPoly([-(a * a + b * b), 0, 1]))

    u, v, s = _tower(a, b)  # v = b/(2u) already carries the sign of b
    square_ok = (u * u - v * v - a).is_zero() and (2 * u * v - b).is_zero()
    # g(Z) = Z^2 - 2aZ + (a^2+b^2);  g(Z^2) has coefficients (N, 0, -2a, 0, 1)
    one = u._lift(Fraction(1))
    zero = u._lift(Fraction(0))
    f1 = [s, -2 * u, one]
    f2 = [s, 2 * u, one]
    prod = _poly_mul(f1, f2)
    g_of_square = [one * (a * a + b * b), zero, one * (-2 * a), zero, one]
    identity_ok = all((x - y).is_zero() for x, y in zip(prod, g_of_square))
    sign_ok = _sign_product(u_alg, v_alg, b) >= 0

    two_u = u_alg.scale(2)
    f1_alg = (mod, -two_u, RealAlgebraic.exact(1))
    f2_alg = (mod, two_u, RealAlgebraic.exact(1))
    return CsqrtCover(a, b, u_alg, v_alg, mod, f1_alg, f2_alg, square_ok, sign_ok, identity_ok)


def _sign_product(u, v, b):
    zero = RealAlgebraic.exact(0)

    def sg(x):
        return (x > zero) - (x < zero)

    return sg(u) * sg(v) * ((b > 0) - (b < 0))
