"""Exact linear arithmetic over Q: Fourier-Motzkin elimination with Farkas multipliers.

A constraint is an affine form (an ``MPoly`` of degree <= 1) compared with 0.
Every derived row remembers the combination of input rows that produced it,
so an infeasible system yields multipliers that re-verify by plain exact
arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

from .mpoly import MPoly
from .rational import format_rational

GE, GT, EQ = ">=", ">", "="


@dataclass(frozen=True)
class Constraint:
    form: MPoly
    rel: str = GE

    def __post_init__(self):
        if self.rel not in (GE, GT, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")
        if self.form.degree > 1:
            raise ValueError("constraint is not affine")

    def holds(self, point):
        v = self.form(point)
        return v >= 0 if self.rel == GE else v > 0 if self.rel == GT else v == 0

    def __str__(self):
        return f"{self.form} {self.rel} 0"


def ge(form):
    return Constraint(form, GE)


def gt(form):
    return Constraint(form, GT)


def eq(form):
    return Constraint(form, EQ)


@dataclass(frozen=True)
class Certificate:
    """Multipliers over ``constraints`` plus one for the negated goal.

    With goal form g and relation ``>=``, the combination
    sum_i lambda_i * c_i - goal_multiplier * g is a constant that is negative,
    or zero while a strict row has a positive multiplier. Equality rows may
    carry multipliers of either sign. When goal_multiplier is 1 this says the
    constraints dominate the goal; when it is 0 the constraints alone are
    contradictory.
    """

    multipliers: tuple
    goal_multiplier: Fraction
    goal: Constraint | None = None

    @property
    def kind(self):
        return "dominate" if self.goal_multiplier else "contradiction"

    def to_json(self):
        return {
            "kind": self.kind,
            "multipliers": [format_rational(m) for m in self.multipliers],
            "goal_multiplier": format_rational(self.goal_multiplier),
        }


@dataclass(frozen=True)
class Entailed:
    certificates: tuple  # one per goal direction (two for an equality goal)

    @property
    def certificate(self):
        return self.certificates[0]


@dataclass(frozen=True)
class Refuted:
    point: dict = field(default_factory=dict)


def verify_certificate(constraints, goal_form, cert, goal_strict_negation=True):
    """Exact re-check of a certificate for ``constraints |- goal_form >= 0``."""
    if len(cert.multipliers) != len(constraints):
        return False
    total = MPoly()
    strict = False
    for lam, c in zip(cert.multipliers, constraints):
        if lam == 0:
            continue
        if lam < 0 and c.rel != EQ:
            return False
        total = total + c.form * lam
        if c.rel == GT and lam > 0:
            strict = True
    mu = cert.goal_multiplier
    if mu < 0:
        return False
    if mu:
        total = total - goal_form * mu
        strict = strict or goal_strict_negation
    if not total.is_const():
        return False
    value = total.const_value()
    return value < 0 or (value == 0 and strict)


# Fourier-Motzkin ------------------------------------------------------------


class _Row:
    __slots__ = ("coeffs", "const", "strict", "mult")

    def __init__(self, coeffs, const, strict, mult):
        self.coeffs = {v: c for v, c in coeffs.items() if c}
        self.const = const
        self.strict = strict
        self.mult = mult  # dict: input index -> multiplier

    def combine(self, a, other, b):
        coeffs = dict((v, a * c) for v, c in self.coeffs.items())
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + b * c
        mult = {k: a * m for k, m in self.mult.items()}
        for k, m in other.mult.items():
            mult[k] = mult.get(k, 0) + b * m
        return _Row(coeffs, a * self.const + b * other.const, self.strict or other.strict, mult)

    def normalized_key(self):
        scale = max((abs(c) for c in self.coeffs.values()), default=Fraction(1))
        return (
            tuple(sorted((v, c / scale) for v, c in self.coeffs.items())),
            self.const / scale,
            self.strict,
        )

    def false_constant(self):
        return not self.coeffs and (self.const < 0 or (self.const == 0 and self.strict))


def _affine(form):
    coeffs = {}
    for m, c in form.terms.items():
        if m:
            coeffs[m[0][0]] = c
    return coeffs, form.const_value()


def _variables(rows):
    return sorted({v for r in rows for v in r.coeffs})


def _dedup(rows):
    seen = {}
    out = []
    for r in rows:
        if not r.coeffs and not r.false_constant():
            continue
        k = r.normalized_key()
        if k not in seen:
            seen[k] = r
            out.append(r)
    return out


def _solve(inputs, names):
    """FM on input rows (list of (coeffs, const, rel)). Returns ('infeasible', mult) or ('feasible', point)."""
    ineqs, eqs = [], []
    for i, (coeffs, const, rel) in enumerate(inputs):
        row = _Row(coeffs, Fraction(const), rel == GT, {i: Fraction(1)})
        (eqs if rel == EQ else ineqs).append(row)

    substitutions = []  # (var, row) with row.coeffs[var] != 0 and row = 0
    for row in eqs:
        # apply earlier substitutions
        for var, srow in substitutions:
            if var in row.coeffs:
                row = row.combine(Fraction(1), srow, -row.coeffs[var] / srow.coeffs[var])
        if not row.coeffs:
            if row.const != 0:
                # only equalities went in, so the combination may be negated
                flip = -1 if row.const > 0 else 1
                return "infeasible", {k: flip * m for k, m in row.mult.items()}
            continue
        var = min(row.coeffs)
        substitutions.append((var, row))
        ineqs = [
            r.combine(Fraction(1), row, -r.coeffs[var] / row.coeffs[var]) if var in r.coeffs else r
            for r in ineqs
        ]
        substitutions = [
            (v, s.combine(Fraction(1), row, -s.coeffs[var] / row.coeffs[var]) if var in s.coeffs and v != var else s)
            for v, s in substitutions
        ]

    rows = _dedup(ineqs)
    for r in rows:
        if r.false_constant():
            return "infeasible", r.mult
    stages = []
    while True:
        vars_left = _variables(rows)
        if not vars_left:
            break
        # eliminate the variable producing the fewest new rows
        def cost(v):
            pos = sum(1 for r in rows if r.coeffs.get(v, 0) > 0)
            neg = sum(1 for r in rows if r.coeffs.get(v, 0) < 0)
            return pos * neg - pos - neg

        var = min(vars_left, key=lambda v: (cost(v), v))
        stages.append((var, rows))
        pos = [r for r in rows if r.coeffs.get(var, 0) > 0]
        neg = [r for r in rows if r.coeffs.get(var, 0) < 0]
        rest = [r for r in rows if var not in r.coeffs]
        new = []
        for p in pos:
            for n in neg:
                new.append(p.combine(-n.coeffs[var], n, p.coeffs[var]))
        rows = _dedup(rest + new)
        for r in rows:
            if r.false_constant():
                return "infeasible", r.mult

    point = {}
    for var, stage_rows in reversed(stages):
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for r in stage_rows:
            a = r.coeffs.get(var, 0)
            if not a:
                continue
            # a variable that vanished along with its rows is free: pin it to 0
            rest = r.const + sum(c * point.setdefault(v, Fraction(0)) for v, c in r.coeffs.items() if v != var)
            bound = -rest / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_strict = bound, r.strict
            else:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_strict = bound, r.strict
        point[var] = _pick(lo, lo_strict, hi, hi_strict)
    for var, srow in reversed(substitutions):
        rest = srow.const + sum(c * point.get(v, 0) for v, c in srow.coeffs.items() if v != var)
        point[var] = -rest / srow.coeffs[var]
    for name in names:
        point.setdefault(name, Fraction(0))
    return "feasible", point


def _ok(x, lo, lo_strict, hi, hi_strict):
    if lo is not None and (x < lo or (lo_strict and x == lo)):
        return False
    if hi is not None and (x > hi or (hi_strict and x == hi)):
        return False
    return True


def _pick(lo, lo_strict, hi, hi_strict):
    """A simple value in the (possibly half-open) interval, preferring small integers."""
    if _ok(Fraction(0), lo, lo_strict, hi, hi_strict):
        return Fraction(0)
    if lo is not None and (hi is None or lo > 0):
        cand = Fraction(math.floor(lo) + 1) if lo_strict or lo.denominator != 1 else lo
        if _ok(cand, lo, lo_strict, hi, hi_strict):
            return cand
    if hi is not None and (lo is None or hi < 0):
        cand = Fraction(math.ceil(hi) - 1) if hi_strict or hi.denominator != 1 else hi
        if _ok(cand, lo, lo_strict, hi, hi_strict):
            return cand
    if lo is not None and hi is not None:
        if not lo_strict:
            return lo
        if not hi_strict:
            return hi
        return (lo + hi) / 2
    raise AssertionError("empty interval during back-substitution")


def _as_inputs(constraints):
    return [(*_affine(c.form), c.rel) for c in constraints]


def _names(constraints, goal):
    names = set()
    for c in list(constraints) + [goal]:
        names.update(c.form.variables())
    return sorted(names)


def _one_direction(constraints, goal_form, names):
    inputs = _as_inputs(constraints)
    coeffs, const = _affine(-goal_form)
    inputs.append((coeffs, const, GT))
    status, data = _solve(inputs, names)
    if status == "feasible":
        return None, data
    n = len(constraints)
    mults = tuple(data.get(i, Fraction(0)) for i in range(n))
    mu = data.get(n, Fraction(0))
    if mu:
        mults = tuple(m / mu for m in mults)
        mu = Fraction(1)
    else:
        # normalize a pure contradiction so the largest multiplier is 1
        scale = max((abs(m) for m in mults), default=Fraction(1)) or Fraction(1)
        mults = tuple(m / scale for m in mults)
    return Certificate(mults, mu), None


def linear_entailment(constraints, goal):
    """Decide ``constraints |= goal`` over Q.

    Returns ``Entailed`` with Farkas multipliers (two certificates for an
    equality goal: one for ``g >= 0`` and one for ``-g >= 0``), or ``Refuted``
    with a rational point satisfying every constraint and violating the goal.
    """
    constraints = list(constraints)
    names = _names(constraints, goal)
    directions = [goal.form] if goal.rel != EQ else [goal.form, -goal.form]
    if goal.rel == GT:
        raise ValueError("strict goals are not supported")
    certs = []
    for g in directions:
        cert, point = _one_direction(constraints, g, names)
        if cert is None:
            return Refuted(point)
        certs.append(Certificate(cert.multipliers, cert.goal_multiplier, Constraint(g, GE)))
    return Entailed(tuple(certs))
