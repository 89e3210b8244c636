"""Sparse multivariate polynomials over Q.

A monomial is a tuple of ``(name, exponent)`` pairs sorted by name, so
polynomials in different variable sets combine without a shared context.
"""

from fractions import Fraction

from .rational import format_rational


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class MPoly:
    __slots__ = ("terms", "_hash", "_shape")

    def __init__(self, terms=None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)
        object.__setattr__(self, "_shape", None)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    # inspection -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(m == () for m in self.terms)

    def const_value(self):
        return self.terms.get((), Fraction(0))

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    @property
    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def key(self):
        """Deterministic sort key (lexicographic over sorted terms)."""
        return tuple(sorted((tuple(m), c) for m, c in self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self.terms.items())))
        return self._hash

    def shape(self):
        """The non-constant part, as a hashable value: p - q is constant iff shapes agree."""
        if self._shape is None:
            object.__setattr__(
                self, "_shape", frozenset((m, c) for m, c in self.terms.items() if m)
            )
        return self._shape

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(o):
        if isinstance(o, MPoly):
            return o
        if isinstance(o, (int, Fraction)):
            return MPoly.const(o)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, 0) + c
        return MPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

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
        d = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return MPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, point):
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                v *= Fraction(point[name]) ** e
            total += v
        return total

    def evaluate(self, point):
        return self(point)

    def linear_coefficients(self, names):
        """(coefficient vector over ``names``, constant) for a polynomial of degree <= 1."""
        if self.degree > 1:
            raise ValueError("polynomial is not affine")
        coeffs = [Fraction(0)] * len(names)
        index = {n: i for i, n in enumerate(names)}
        for m, c in self.terms.items():
            if m:
                coeffs[index[m[0][0]]] += c
        return tuple(coeffs), self.const_value()

    def to_unipoly(self, name):
        from .poly import UniPoly

        out = {}
        for m, c in self.terms.items():
            if any(v != name for v, _ in m):
                raise ValueError(f"not univariate in {name}")
            k = m[0][1] if m else 0
            out[k] = out.get(k, 0) + c
        deg = max(out, default=-1)
        return UniPoly(out.get(i, 0) for i in range(deg + 1))

    def __repr__(self):
        return f"MPoly({format_mpoly(self)!r})"

    def __str__(self):
        return format_mpoly(self)


def _mono_str(m):
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def format_mpoly(p):
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))
    parts = []
    for m, c in items:
        neg = c < 0
        a = -c if neg else c
        if not m:
            body = format_rational(a)
        elif a == 1:
            body = _mono_str(m)
        else:
            body = f"{format_rational(a)}*{_mono_str(m)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
