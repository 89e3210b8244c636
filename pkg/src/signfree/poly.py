"""Dense univariate polynomials with exact rational coefficients."""

from fractions import Fraction
import math
import re

from .rational import format_rational, sign


class DomainError(ValueError):
    """An operation was called outside its domain."""


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Polynomial in one variable; ``coeffs[k]`` is the coefficient of X^k.

    Instances are immutable and hashable. The zero polynomial has an empty
    coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @classmethod
    def monomial(cls, c, k):
        return cls((0,) * k + (c,))

    # basic data -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        return UniPoly(c * a for a in self.coeffs)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.lead
        if len(rem) - 1 < db:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] -= c * bj
        return UniPoly(quot), UniPoly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # evaluation -----------------------------------------------------------

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x):
        return sign(self(x))

    def derivative(self, k=1):
        c = self.coeffs
        for _ in range(k):
            c = tuple(i * c[i] for i in range(1, len(c)))
        return UniPoly(c)

    def monic(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no monic associate")
        return self.scale(1 / self.lead)

    def compose_affine(self, a, b):
        """Return p(a*X + b)."""
        out = UniPoly()
        lin = UniPoly((b, a))
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def shift(self, b):
        return self.compose_affine(1, b)

    def reflect(self):
        """p(-X)."""
        return UniPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def primitive_integer(self):
        """Integer polynomial with the same roots and positive content 1 scaling."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return UniPoly(Fraction(v // g) for v in ints)


# gcd, squarefree ----------------------------------------------------------


def poly_gcd(a, b):
    """Monic gcd (zero if both are zero)."""
    if b:
        b = b.monic()
    while b:
        r = a % b
        a, b = b, (r.monic() if r else r)
    return a.monic() if a else a


def squarefree_part(p):
    if p.degree <= 0:
        return p.monic() if p else p
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_factorization(p):
    """Yun's algorithm: returns [(g_i, i)] with p = lead * prod g_i^i, g_i monic squarefree."""
    if p.degree < 1:
        return []
    p = p.monic()
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        if a.degree > 0:
            out.append((a.monic(), i))
        d = c - b.derivative()
        i += 1
    return out


def normalized_derivative(f, k):
    """k-th derivative of a monic polynomial divided by its leading coefficient."""
    if not f.is_monic():
        raise DomainError("normalized_derivative expects a monic polynomial")
    if not 0 <= k < f.degree:
        raise DomainError(f"k={k} out of range for degree {f.degree}")
    return f.derivative(k).monic()


def cauchy_bound(f):
    """sup_k (1 + |a_k|) for the monic f = X^d + sum a_k X^k (includes the leading 1)."""
    f = f.monic()
    return max(1 + abs(c) for c in f.coeffs)


# Sturm sequences ----------------------------------------------------------


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        # positive rescaling keeps the sign pattern and the numbers small
        seq.append(r.scale(1 / abs(r.lead)))
    return [s for s in seq if s]


def _variations(values):
    signs = [v for v in (sign(x) for x in values) if v]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sign_variations(values):
    """Number of sign changes in a sequence, zeros dropped."""
    return _variations(values)


def _at_infinity(seq, s):
    out = []
    for q in seq:
        lead = sign(q.lead)
        out.append(lead if (s > 0 or q.degree % 2 == 0) else -lead)
    return out


def sturm_count(p, lo=None, hi=None, seq=None):
    """Number of distinct real roots of p in (lo, hi]; None means infinite end."""
    if p.degree < 1:
        return 0
    seq = seq if seq is not None else sturm_sequence(p)
    vlo = _variations(_at_infinity(seq, -1) if lo is None else [q(lo) for q in seq])
    vhi = _variations(_at_infinity(seq, 1) if hi is None else [q(hi) for q in seq])
    return vlo - vhi


# text form ----------------------------------------------------------------


def format_poly(p, var="x"):
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if k == 0:
            body = format_rational(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:\s*/\s*\d+)?)\s*(?:\*\s*(?P<v1>[a-zA-Z]\w*)(?:\s*\^\s*(?P<e1>\d+))?)?
        | (?P<v2>[a-zA-Z]\w*)(?:\s*\^\s*(?P<e2>\d+))?
        )""",
    re.VERBOSE,
)


def parse_poly(text, var="x"):
    """Parse the ``c*x^k + ...`` grammar. Raises ``ParseError`` with a position."""
    from .terms import ParseError

    pos = 0
    coeffs = {}
    first = True
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("v2") is None):
            raise ParseError(text, pos, ["term"])
        if not first and m.group("sign") is None:
            raise ParseError(text, pos, ["+", "-"])
        s = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef").replace(" ", ""))
            v, e = m.group("v1"), m.group("e1")
            k = 0 if v is None else int(e or 1)
        else:
            c = Fraction(1)
            v, e = m.group("v2"), m.group("e2")
            k = int(e or 1)
        if v is not None and v != var:
            raise ParseError(text, m.start("v1") if m.group("v1") else m.start("v2"), [var])
        coeffs[k] = coeffs.get(k, 0) + s * c
        pos = m.end()
        first = False
    if first:
        raise ParseError(text, 0, ["term"])
    deg = max(coeffs) if coeffs else -1
    return UniPoly(coeffs.get(i, 0) for i in range(deg + 1))


def check_mean_value(f, a, b, lambdas, weights):
    """Exact test of f(b) - f(a) = (b - a) * sum_i w_i f'(a + l_i (b - a))."""
    if len(lambdas) != len(weights):
        raise DomainError("lambdas and weights must have equal length")
    if f.degree > len(lambdas):
        raise DomainError(f"degree {f.degree} exceeds rule size {len(lambdas)}")
    a, b = Fraction(a), Fraction(b)
    df = f.derivative()
    delta = b - a
    rhs = delta * sum(Fraction(w) * df(a + Fraction(l) * delta) for l, w in zip(lambdas, weights))
    return f(b) - f(a) == rhs


# Node and weight table exact for degree <= 4.
QUARTIC_NODES = (Fraction(1, 6), Fraction(1, 3), Fraction(2, 3), Fraction(5, 6))
QUARTIC_WEIGHTS = (Fraction(1, 3), Fraction(1, 6), Fraction(1, 6), Fraction(1, 3))
