"""Terms over (+, -, *, sup, inf), their text grammar and exact evaluation.

Grammar (lowest to highest precedence)::

    sup    := inf ('\\/' inf)*
    inf    := sum ('/\\' sum)*
    sum    := prod (('+' | '-') prod)*
    prod   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' sup ')' | FUNC '(' sup ')'

with ``FUNC`` one of ``abs``, ``pos`` (t \\/ 0) and ``neg`` ((-t) \\/ 0).
A ``-`` directly in front of a number literal (not raised to a power)
produces a negative constant.
"""

from dataclasses import dataclass
from fractions import Fraction
import re

from .mpoly import MPoly
from .rational import format_rational


class ParseError(ValueError):
    def __init__(self, text, pos, expected):
        self.text = text
        self.pos = pos
        self.expected = list(expected)
        got = text[pos : pos + 10] or "end of input"
        super().__init__(
            f"parse error at position {pos}: expected {' or '.join(map(repr, self.expected))}, "
            f"got {got!r}"
        )


class UnboundVariableError(LookupError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


# nodes --------------------------------------------------------------------


class Term:
    __slots__ = ()

    def __add__(self, o):
        return Add(self, as_term(o))

    def __radd__(self, o):
        return Add(as_term(o), self)

    def __sub__(self, o):
        return Add(self, Neg(as_term(o)))

    def __rsub__(self, o):
        return Add(as_term(o), Neg(self))

    def __mul__(self, o):
        return Mul(self, as_term(o))

    def __rmul__(self, o):
        return Mul(as_term(o), self)

    def __neg__(self):
        return Neg(self)

    def __or__(self, o):
        return Sup(self, as_term(o))

    def __and__(self, o):
        return Inf(self, as_term(o))

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True, eq=True, repr=False)
class Const(Term):
    value: Fraction

    def __repr__(self):
        return f"Const({format_rational(self.value)})"


@dataclass(frozen=True, repr=False)
class Var(Term):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Pow(Term):
    base: Term
    exp: int


@dataclass(frozen=True)
class Sup(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Inf(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Abs(Term):
    arg: Term


@dataclass(frozen=True)
class Pos(Term):
    arg: Term


@dataclass(frozen=True)
class NegPart(Term):
    arg: Term


def as_term(o):
    if isinstance(o, Term):
        return o
    if isinstance(o, str):
        return Var(o)
    return Const(Fraction(o))


def const(c):
    return Const(Fraction(c))


def variables(*names):
    return tuple(Var(n) for n in names)


def sup_all(terms):
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = Sup(out, t)
    return out


def inf_all(terms):
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = Inf(out, t)
    return out


def sum_all(terms):
    terms = list(terms)
    if not terms:
        return Const(Fraction(0))
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def desugar(t):
    """Expand Abs/Pos/NegPart/Pow into the core constructors."""
    if isinstance(t, (Const, Var)):
        return t
    if isinstance(t, Neg):
        return Neg(desugar(t.arg))
    if isinstance(t, (Add, Mul, Sup, Inf)):
        return type(t)(desugar(t.left), desugar(t.right))
    if isinstance(t, Pow):
        b = desugar(t.base)
        if t.exp == 0:
            return Const(Fraction(1))
        out = b
        for _ in range(t.exp - 1):
            out = Mul(out, b)
        return out
    a = desugar(t.arg)
    if isinstance(t, Abs):
        return Sup(a, Neg(a))
    if isinstance(t, Pos):
        return Sup(a, Const(Fraction(0)))
    if isinstance(t, NegPart):
        return Sup(Neg(a), Const(Fraction(0)))
    raise TypeError(f"unknown term node {t!r}")


def term_variables(t):
    out = set()

    def walk(u):
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, (Neg, Abs, Pos, NegPart)):
            walk(u.arg)
        elif isinstance(u, Pow):
            walk(u.base)
        elif isinstance(u, (Add, Mul, Sup, Inf)):
            walk(u.left)
            walk(u.right)

    walk(t)
    return sorted(out)


def has_lattice(t):
    if isinstance(t, (Sup, Inf, Abs, Pos, NegPart)):
        return True
    if isinstance(t, Neg):
        return has_lattice(t.arg)
    if isinstance(t, Pow):
        return has_lattice(t.base)
    if isinstance(t, (Add, Mul)):
        return has_lattice(t.left) or has_lattice(t.right)
    return False


# evaluation ---------------------------------------------------------------


def eval_term(t, point):
    """Exact value at a rational point; sup is max and inf is min."""
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        try:
            return Fraction(point[t.name])
        except KeyError:
            raise UnboundVariableError(t.name) from None
    if isinstance(t, Neg):
        return -eval_term(t.arg, point)
    if isinstance(t, Add):
        return eval_term(t.left, point) + eval_term(t.right, point)
    if isinstance(t, Mul):
        return eval_term(t.left, point) * eval_term(t.right, point)
    if isinstance(t, Pow):
        return eval_term(t.base, point) ** t.exp
    if isinstance(t, Sup):
        return max(eval_term(t.left, point), eval_term(t.right, point))
    if isinstance(t, Inf):
        return min(eval_term(t.left, point), eval_term(t.right, point))
    v = eval_term(t.arg, point)
    if isinstance(t, Abs):
        return abs(v)
    if isinstance(t, Pos):
        return max(v, Fraction(0))
    if isinstance(t, NegPart):
        return max(-v, Fraction(0))
    raise TypeError(f"unknown term node {t!r}")


def to_mpoly(t):
    """Polynomial of a lattice-free term."""
    if isinstance(t, Const):
        return MPoly.const(t.value)
    if isinstance(t, Var):
        return MPoly.var(t.name)
    if isinstance(t, Neg):
        return -to_mpoly(t.arg)
    if isinstance(t, Add):
        return to_mpoly(t.left) + to_mpoly(t.right)
    if isinstance(t, Mul):
        return to_mpoly(t.left) * to_mpoly(t.right)
    if isinstance(t, Pow):
        return to_mpoly(t.base) ** t.exp
    raise ValueError("term contains lattice operations")


def from_mpoly(p):
    """A lattice-free term for a polynomial (sum of monomials)."""
    if p.is_zero():
        return Const(Fraction(0))
    items = sorted(p.terms.items(), key=lambda mc: (-sum(e for _, e in mc[0]), mc[0]))
    out = None
    for m, c in items:
        factors = [Var(v) if e == 1 else Pow(Var(v), e) for v, e in m]
        mono = None
        for f in factors:
            mono = f if mono is None else Mul(mono, f)
        if mono is None:
            piece, neg = Const(abs(c)), c < 0
        elif abs(c) == 1:
            piece, neg = mono, c < 0
        else:
            piece, neg = Mul(Const(abs(c)), mono), c < 0
        if out is None:
            out = Neg(piece) if neg and mono is not None else (Const(c) if mono is None else piece)
        else:
            out = Add(out, Neg(piece)) if neg else Add(out, piece)
    return out


# printing -----------------------------------------------------------------

_PREC = {Sup: 1, Inf: 2, Add: 3, Mul: 4, Neg: 5, Pow: 6}


def _prec(t):
    if isinstance(t, Const):
        return 7 if t.value >= 0 else 5
    return _PREC.get(type(t), 7)


def format_term(t):
    return _fmt(t)


def _wrap(t, min_prec):
    s = _fmt(t)
    return f"({s})" if _prec(t) < min_prec else s


def _fmt(t):
    if isinstance(t, Const):
        return format_rational(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Abs):
        return f"abs({_fmt(t.arg)})"
    if isinstance(t, Pos):
        return f"pos({_fmt(t.arg)})"
    if isinstance(t, NegPart):
        return f"neg({_fmt(t.arg)})"
    if isinstance(t, Neg):
        a = t.arg
        if isinstance(a, Const) or (isinstance(a, Pow) and isinstance(a.base, Const) and False):
            return f"-({_fmt(a)})"
        return "-" + _wrap(a, 5)
    if isinstance(t, Pow):
        b = t.base
        if isinstance(b, Const) and (b.value < 0 or b.value.denominator != 1):
            return f"({_fmt(b)})^{t.exp}"
        return f"{_wrap(b, 7)}^{t.exp}"
    if isinstance(t, Add):
        left = _wrap(t.left, 3)
        r = t.right
        if isinstance(r, Neg) and not isinstance(r.arg, Const):
            return f"{left} - {_wrap(r.arg, 4)}"
        if isinstance(r, Neg):
            return f"{left} - {_fmt(r.arg)}"
        return f"{left} + {_wrap(r, 4)}"
    if isinstance(t, Mul):
        return f"{_wrap(t.left, 4)}*{_wrap(t.right, 5)}"
    if isinstance(t, Sup):
        return f"{_wrap(t.left, 1)} \\/ {_wrap(t.right, 2)}"
    if isinstance(t, Inf):
        return f"{_wrap(t.left, 2)} /\\ {_wrap(t.right, 3)}"
    raise TypeError(f"unknown term node {t!r}")


# parsing ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<num>\d+)
      | (?P<name>[A-Za-z_]\w*)
      | (?P<op>\\/|/\\|\|-|>=|<=|[-+*^(),=/])
    )""",
    re.VERBOSE,
)

FUNCS = {"abs": Abs, "pos": Pos, "neg": NegPart}


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(text, pos, ["number", "name", "operator"])
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.peek()
        if v != value or kind == "end":
            raise ParseError(self.text, pos, [value])
        return self.take()

    def at(self, *values):
        kind, v, _ = self.peek()
        return kind == "op" and v in values

    def sup(self):
        t = self.inf()
        while self.at("\\/"):
            self.take()
            t = Sup(t, self.inf())
        return t

    def inf(self):
        t = self.sum()
        while self.at("/\\"):
            self.take()
            t = Inf(t, self.sum())
        return t

    def sum(self):
        t = self.prod()
        while self.at("+", "-"):
            op = self.take()[1]
            r = self.prod()
            t = Add(t, r) if op == "+" else Add(t, Neg(r))
        return t

    def prod(self):
        t = self.unary()
        while self.at("*"):
            self.take()
            t = Mul(t, self.unary())
        return t

    def unary(self):
        if self.at("-"):
            self.take()
            kind, _, _ = self.peek()
            if kind == "num":
                save = self.i
                lit = self.number()
                if not self.at("^"):
                    return Const(-lit)
                self.i = save
            return Neg(self.unary())
        return self.power()

    def power(self):
        t = self.atom()
        if self.at("^"):
            self.take()
            kind, v, pos = self.peek()
            if kind != "num":
                raise ParseError(self.text, pos, ["integer exponent"])
            self.take()
            t = Pow(t, int(v))
        return t

    def number(self):
        kind, v, pos = self.take()
        val = Fraction(int(v))
        if self.at("/") and self.peek(1)[0] == "num":
            self.take()
            d = int(self.take()[1])
            if d == 0:
                raise ParseError(self.text, pos, ["nonzero denominator"])
            val = val / d
        return val

    def atom(self):
        kind, v, pos = self.peek()
        if kind == "num":
            return Const(self.number())
        if kind == "name":
            self.take()
            if v in FUNCS and self.at("("):
                self.take()
                inner = self.sup()
                self.expect(")")
                return FUNCS[v](inner)
            return Var(v)
        if self.at("("):
            self.take()
            inner = self.sup()
            self.expect(")")
            return inner
        raise ParseError(self.text, pos, ["number", "variable", "(", "abs", "pos", "neg"])

    def finish(self):
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(self.text, pos, ["end of input"])


def parse_term(text):
    p = _Parser(text)
    t = p.sup()
    p.finish()
    return t
