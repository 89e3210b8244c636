"""Branch-on-sign proofs of algebraic rules for lattice-ordered abelian groups.

Each atom is rewritten as a sup of infs of affine forms. A proof state is a
list of comparisons between affine forms; whenever some sup or inf cannot be
resolved from the current comparisons, the search opens two branches
(``p <= q`` and ``p >= q``). Once every sup and inf has collapsed to a single
affine form, the leaf is an exact linear-arithmetic problem, settled by
Fourier-Motzkin with Farkas multipliers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools

from . import terms as T
from .linear import (
    Constraint,
    Entailed,
    GE,
    EQ as REL_EQ,
    linear_entailment,
    verify_certificate,
)
from .mpoly import MPoly, format_mpoly
from .rational import format_rational
from .semipoly import to_sup_inf_nf, tri_term, tri_term_dual

EQ_ZERO, GEQ_ZERO = "=", ">="


class UnsupportedFragmentError(ValueError):
    """The rule uses multiplication between non-constant terms."""


@dataclass(frozen=True)
class Atom:
    term: T.Term
    relation: str = GEQ_ZERO

    def __post_init__(self):
        if self.relation not in (EQ_ZERO, GEQ_ZERO):
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, point):
        v = T.eval_term(self.term, point)
        return v == 0 if self.relation == EQ_ZERO else v >= 0

    def __str__(self):
        return f"{T.format_term(self.term)} {self.relation} 0"


@dataclass(frozen=True)
class Rule:
    hypotheses: tuple
    conclusion: Atom
    name: str = ""

    def variables(self):
        names = set()
        for a in self.hypotheses + (self.conclusion,):
            names.update(T.term_variables(a.term))
        return sorted(names)

    def holds_at(self, point):
        """True unless the point satisfies every hypothesis and violates the conclusion."""
        return not all(h.holds(point) for h in self.hypotheses) or self.conclusion.holds(point)

    def __str__(self):
        return format_rule(self)


def format_rule(rule):
    hyps = ", ".join(str(h) for h in rule.hypotheses)
    return f"{hyps} |- {rule.conclusion}" if hyps else f"|- {rule.conclusion}"


# rule grammar ---------------------------------------------------------------


def _atom_from(lhs, op, rhs):
    zero = isinstance(rhs, T.Const) and rhs.value == 0
    if op == "=":
        return Atom(lhs if zero else T.Add(lhs, T.Neg(rhs)), EQ_ZERO)
    if op == ">=":
        return Atom(lhs if zero else T.Add(lhs, T.Neg(rhs)), GEQ_ZERO)
    # a <= b  is  b - a >= 0
    if isinstance(lhs, T.Const) and lhs.value == 0:
        return Atom(rhs, GEQ_ZERO)
    return Atom(T.Add(rhs, T.Neg(lhs)), GEQ_ZERO)


def parse_atom(text):
    p = T._Parser(text)
    atom = _parse_atom(p)
    p.finish()
    return atom


def _parse_atom(p):
    lhs = p.sup()
    kind, v, pos = p.peek()
    if not p.at("=", ">=", "<="):
        raise T.ParseError(p.text, pos, ["=", ">=", "<="])
    op = p.take()[1]
    rhs = p.sup()
    return _atom_from(lhs, op, rhs)


def parse_rule(text):
    """``H1, H2, ... |- C`` with atoms ``t = s``, ``t >= s`` or ``t <= s``."""
    p = T._Parser(text)
    hyps = []
    if not p.at("|-"):
        hyps.append(_parse_atom(p))
        while p.at(","):
            p.take()
            hyps.append(_parse_atom(p))
    if not p.at("|-"):
        raise T.ParseError(text, p.peek()[2], ["|-", ","])
    p.take()
    concl = _parse_atom(p)
    p.finish()
    return Rule(tuple(hyps), concl)


# normalization ----------------------------------------------------------------


def _check_additive(t):
    if isinstance(t, T.Mul):
        left_const = not T.term_variables(t.left)
        right_const = not T.term_variables(t.right)
        if not (left_const or right_const):
            raise UnsupportedFragmentError(
                f"multiplicative term {T.format_term(t)!r}: proof search covers the additive fragment"
            )
    if isinstance(t, T.Pow):
        if T.term_variables(t.base) and t.exp != 1:
            raise UnsupportedFragmentError(f"power {T.format_term(t)!r} is not additive")
    for child in _children(t):
        _check_additive(child)


def _children(t):
    if isinstance(t, (T.Neg, T.Abs, T.Pos, T.NegPart)):
        return (t.arg,)
    if isinstance(t, T.Pow):
        return (t.base,)
    if isinstance(t, (T.Add, T.Mul, T.Sup, T.Inf)):
        return (t.left, t.right)
    return ()


def _form_key(form, names):
    coeffs, const = form.linear_coefficients(names)
    return (coeffs, const)


# proof trees ----------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    constraints: tuple  # Constraint list: split decisions then collapsed hypotheses
    goal: Constraint
    certificates: tuple

    def verify(self):
        goals = [self.goal.form] if self.goal.rel != REL_EQ else [self.goal.form, -self.goal.form]
        return len(goals) == len(self.certificates) and all(
            verify_certificate(self.constraints, g, c) for g, c in zip(goals, self.certificates)
        )

    def to_json(self):
        return {
            "leaf": {
                "constraints": [str(c) for c in self.constraints],
                "goal": str(self.goal),
                "certificates": [c.to_json() for c in self.certificates],
            }
        }


@dataclass(frozen=True)
class Split:
    pair: tuple  # (p, q): left branch assumes p <= q, right branch p >= q
    left: object
    right: object

    def verify(self):
        return self.left.verify() and self.right.verify()

    def to_json(self):
        p, q = self.pair
        return {
            "split": [format_mpoly(p), format_mpoly(q)],
            "le": self.left.to_json(),
            "ge": self.right.to_json(),
        }


def tree_stats(tree):
    if isinstance(tree, Leaf):
        return {"splits": 0, "leaves": 1, "depth": 0}
    a, b = tree_stats(tree.left), tree_stats(tree.right)
    return {
        "splits": 1 + a["splits"] + b["splits"],
        "leaves": a["leaves"] + b["leaves"],
        "depth": 1 + max(a["depth"], b["depth"]),
    }


@dataclass(frozen=True)
class Valid:
    tree: object
    stats: dict = field(default_factory=dict)

    def to_json(self):
        return {"result": "Valid", "stats": self.stats}


@dataclass(frozen=True)
class Counterexample:
    point: dict

    def to_json(self):
        return {
            "result": "Counterexample",
            "point": {k: format_rational(v) for k, v in sorted(self.point.items())},
        }


# search -----------------------------------------------------------------------


class _Search:
    def __init__(self, rule):
        self.rule = rule
        self.names = rule.variables()
        self.hyp_nfs = [to_sup_inf_nf(h.term) for h in rule.hypotheses]
        self.goal_nf = to_sup_inf_nf(rule.conclusion.term)
        for nf in self.hyp_nfs + [self.goal_nf]:
            for fam in nf.families:
                for p in fam:
                    if p.degree > 1:
                        raise UnsupportedFragmentError("normal form is not piecewise affine")
        self._cache = {}

    def key(self, form):
        return _form_key(form, self.names)

    def entails_le(self, constraints, p, q):
        """Do the constraints entail p <= q?"""
        d = q - p
        if d.is_const():
            return d.const_value() >= 0
        ck = (constraints, d)
        hit = self._cache.get(ck)
        if hit is None:
            hit = isinstance(linear_entailment(constraints, Constraint(d, GE)), Entailed)
            self._cache[ck] = hit
        return hit

    def _extreme(self, forms, constraints, smallest):
        """An entailed minimum (or maximum) of ``forms``, or an unresolved pair."""
        forms = sorted(set(forms), key=self.key)
        if len(forms) == 1:
            return forms[0], None
        unresolved = None
        for m in forms:
            ok = True
            for e in forms:
                if e is m:
                    continue
                le = self.entails_le(constraints, m, e) if smallest else self.entails_le(constraints, e, m)
                if not le:
                    ok = False
                    if unresolved is None:
                        other = self.entails_le(constraints, e, m) if smallest else self.entails_le(constraints, m, e)
                        if not other:
                            unresolved = (m, e) if self.key(m) <= self.key(e) else (e, m)
                    break
            if ok:
                return m, None
        if unresolved is None:
            # no single extreme element yet every tested pair was ordered;
            # look for any unordered pair
            for a, b in itertools.combinations(forms, 2):
                if not self.entails_le(constraints, a, b) and not self.entails_le(constraints, b, a):
                    unresolved = (a, b)
                    break
        return None, unresolved

    def collapse(self, nf, constraints):
        mins = []
        for fam in nf.families:
            m, pair = self._extreme(fam, constraints, smallest=True)
            if m is None:
                return None, pair
            mins.append(m)
        m, pair = self._extreme(mins, constraints, smallest=False)
        return m, pair

    def _infeasible(self, constraints):
        return isinstance(linear_entailment(constraints, Constraint(MPoly.const(-1), GE)), Entailed)

    def run(self, splits=()):
        # collapsed hypotheses join the context as soon as they are known,
        # so later collapses and dead branches see them
        context = tuple(splits)
        rels = [REL_EQ if h.relation == EQ_ZERO else GE for h in self.rule.hypotheses]
        goal_rel = REL_EQ if self.rule.conclusion.relation == EQ_ZERO else GE
        goal = None
        nfs = self.hyp_nfs + [self.goal_nf]
        for idx, (nf, rel) in enumerate(zip(nfs, rels + [goal_rel])):
            form, pair = self.collapse(nf, context)
            if form is None:
                p, q = pair
                left = self._branch(splits + (Constraint(q - p, GE),), context)
                if isinstance(left, Counterexample):
                    return left
                right = self._branch(splits + (Constraint(p - q, GE),), context)
                if isinstance(right, Counterexample):
                    return right
                return Split((p, q), left, right)
            if idx < len(rels):
                context = context + (Constraint(form, rel),)
            else:
                goal = Constraint(form, rel)
        result = linear_entailment(context, goal)
        if isinstance(result, Entailed):
            return Leaf(context, goal, result.certificates)
        point = {n: result.point.get(n, Fraction(0)) for n in self.names}
        return Counterexample(point)

    def _branch(self, splits, context):
        extra = splits[-1]
        if self._infeasible(context + (extra,)):
            return self.run_dead(context + (extra,))
        return self.run(splits)

    def run_dead(self, constraints):
        """A branch whose split and known hypotheses already contradict each other."""
        rel = REL_EQ if self.rule.conclusion.relation == EQ_ZERO else GE
        # any goal follows; use the conclusion's first affine form for readability
        goal = Constraint(self.goal_nf.families[0][0], rel)
        result = linear_entailment(constraints, goal)
        return Leaf(constraints, goal, result.certificates)


def prove_lgroup_rule(rule):
    """Valid(proof tree) or Counterexample(point) for a rule of the additive fragment."""
    if isinstance(rule, str):
        rule = parse_rule(rule)
    for a in rule.hypotheses + (rule.conclusion,):
        _check_additive(a.term)
    result = _Search(rule).run()
    if isinstance(result, Counterexample):
        if rule.holds_at(result.point):
            raise AssertionError(f"counterexample {result.point} does not refute {rule}")
        return result
    return Valid(result, tree_stats(result))


def distinct_forms(rule):
    """Number of distinct affine forms across all normal forms of the rule."""
    forms = set()
    for a in rule.hypotheses + (rule.conclusion,):
        for fam in to_sup_inf_nf(a.term).families:
            forms.update(fam)
    return len(forms)


# corpus -----------------------------------------------------------------------


def _r(text, name):
    rule = parse_rule(text)
    return Rule(rule.hypotheses, rule.conclusion, name)


def _orth(a, b):
    return f"abs({a}) /\\ abs({b}) = 0"


def _inclusion_exclusion(n):
    xs = [f"x{i}" for i in range(1, n + 1)]
    lhs = " \\/ ".join(xs)
    parts = []
    for k in range(1, n + 1):
        for sub in itertools.combinations(xs, k):
            inf = " /\\ ".join(sub)
            inf = f"({inf})" if k > 1 else inf
            parts.append(("+" if k % 2 == 1 else "-", inf))
    rhs = parts[0][1] + "".join(f" {s} {t}" for s, t in parts[1:])
    return f"|- {lhs} = {rhs}"


def _archimedean_step(n):
    def scaled(c, v):
        return v if c == 1 else f"{c}*{v}"

    terms = []
    for k in range(1, n + 1):
        terms.append(f"({scaled(k, 'y')} + {scaled(n - k, 'x')})" if k < n else scaled(n, "y"))
    joined = " /\\ ".join(terms)
    return f"{n}*x >= {joined} |- x >= y"


def _tri_rules(n):
    xs = [T.Var(f"x{i}") for i in range(1, n + 1)]
    out = []
    for k in range(1, n + 1):
        out.append(
            Rule((), Atom(T.Add(tri_term(k, xs), T.Neg(tri_term_dual(k, xs))), EQ_ZERO), f"18a n={n} k={k}")
        )
    for k in range(1, n):
        out.append(
            Rule((), Atom(T.Add(tri_term(k + 1, xs), T.Neg(tri_term(k, xs))), GEQ_ZERO), f"18b n={n} k={k}")
        )
    return out


def _tri_sorted(n, order):
    """18c: for a chain x_{order[0]} <= x_{order[1]} <= ..., Tri_k picks the k-th smallest."""
    xs = [T.Var(f"x{i}") for i in range(1, n + 1)]
    hyps = tuple(
        Atom(T.Add(xs[order[i + 1]], T.Neg(xs[order[i]])), GEQ_ZERO) for i in range(n - 1)
    )
    out = []
    for k in range(1, n + 1):
        concl = Atom(T.Add(tri_term(k, xs), T.Neg(xs[order[k - 1]])), EQ_ZERO)
        out.append(Rule(hyps, concl, f"18c n={n} order={order} k={k}"))
    return out


def lattice_group_corpus():
    """Identities and rules valid in every lattice-ordered abelian group, as provable rules.

    ``x^-`` is ``neg(x) = (-x) \\/ 0``, and ``x`` orthogonal to ``y`` is
    encoded as ``|x| /\\ |y| = 0``. Equivalences give one rule per direction.
    """
    R = []
    R.append(_r("|- x + y = abs(x - y) + 2*(x /\\ y)", "1"))
    R.append(_r("|- pos(x /\\ y) = pos(x) /\\ pos(y)", "2a"))
    R.append(_r("|- neg(x /\\ y) = neg(x) \\/ neg(y)", "2b"))
    R.append(_r("|- pos(x \\/ y) = pos(x) \\/ pos(y)", "2c"))
    R.append(_r("|- neg(x \\/ y) = neg(x) /\\ neg(y)", "2d"))
    R.append(_r("|- 2*pos(x /\\ y) <= pos(x + y)", "3a"))
    R.append(_r("|- pos(x + y) <= pos(x) + pos(y)", "3b"))
    R.append(_r("|- abs(x + y) <= abs(x) + abs(y)", "4a"))
    R.append(_r("|- abs(x) + abs(y) = abs(x + y) + 2*(pos(x) /\\ neg(y)) + 2*(neg(x) /\\ pos(y))", "4b"))
    R.append(_r("|- abs(x - y) <= abs(x) + abs(y)", "5a"))
    R.append(_r("|- abs(x) + abs(y) = abs(x - y) + 2*(pos(x) /\\ pos(y)) + 2*(neg(x) /\\ neg(y))", "5b"))
    R.append(_r("|- abs(x + y) \\/ abs(x - y) = abs(x) + abs(y)", "6"))
    R.append(_r("|- abs(x + y) /\\ abs(x - y) = abs(abs(x) - abs(y))", "7"))
    R.append(_r("|- abs(x - y) = (x \\/ y) - (x /\\ y)", "8"))
    R.append(_r("|- abs((x \\/ z) - (y \\/ z)) + abs((x /\\ z) - (y /\\ z)) = abs(x - y)", "9"))
    R.append(_r("|- abs(pos(x) - pos(y)) + abs(neg(x) - neg(y)) = abs(x - y)", "10"))
    R.append(_r("z <= x |- (x /\\ y) \\/ z = x /\\ (y \\/ z)", "11"))
    R.append(_r("x + y = z + t |- x + y = (x \\/ z) + (y /\\ t)", "12"))
    for n in (2, 3):
        R.append(_r(_archimedean_step(n), f"13 n={n}"))
    for n in (2, 3):
        R.append(_r(_inclusion_exclusion(n), f"14 n={n}"))
    R.append(_r(f"{_orth('x', 'y')} |- abs(x + y) = abs(x - y)", "15a"))
    R.append(_r(f"abs(x + y) = abs(x - y) |- {_orth('x', 'y')}", "15b"))
    R.append(_r("abs(x + y) = abs(x - y) |- abs(x + y) = abs(x) \\/ abs(y)", "15c"))
    R.append(_r("abs(x + y) = abs(x) \\/ abs(y) |- abs(x + y) = abs(x - y)", "15d"))
    R.append(_r(f"{_orth('x', 'y')} |- abs(x + y) = abs(x) + abs(y)", "16a"))
    R.append(_r(f"{_orth('x', 'y')} |- abs(x) + abs(y) = abs(x) \\/ abs(y)", "16b"))
    hyp17 = ", ".join(
        [_orth("x", "y"), _orth("x2", "y"), _orth("x", "y2"), _orth("x2", "y2"), "x + y = x2 + y2"]
    )
    R.append(_r(f"{hyp17} |- x = x2", "17a"))
    R.append(_r(f"{hyp17} |- y = y2", "17b"))
    for n in (2, 3):
        R.extend(_tri_rules(n))
    R.extend(_tri_sorted(3, (1, 0, 2)))
    R.extend(_tri_sorted(3, (2, 1, 0)))
    pos3 = "u >= 0, v >= 0, w >= 0"
    R.append(_r(f"{pos3}, {_orth('u', 'v')} |- u + v = abs(u - v)", "19a"))
    R.append(_r(f"{pos3}, u + v = abs(u - v) |- {_orth('u', 'v')}", "19b"))
    R.append(_r(f"{pos3} |- (u + v) /\\ w <= (u /\\ w) + (v /\\ w)", "20"))
    R.append(_r(f"{pos3} |- (x + y) \\/ w <= (x \\/ w) + (y \\/ w)", "21"))
    R.append(_r(f"{pos3}, {_orth('v', 'w')} |- (u + v) /\\ w = u /\\ w", "22"))
    R.append(_r(f"{pos3}, {_orth('u', 'v')} |- (u + v) /\\ w = (u /\\ w) + (v /\\ w)", "23"))
    return R


# rule constants from the axiom catalogue of lattice-ordered groups
LGROUP_AXIOMS = {
    "sup1": "|- x \\/ y >= x",
    "sup2": "|- x \\/ y >= y",
    "Sup": "z >= x, z >= y |- z >= x \\/ y",
    "inf1": "|- x /\\ y <= x",
    "inf2": "|- x /\\ y <= y",
    "grl": "|- x + (y \\/ z) = (x + y) \\/ (x + z)",
    "gr5": "|- (x \\/ y) + (x /\\ y) = x + y",
    "Grl3_2": "2*x >= 0 |- x >= 0",
    "Grl3_3": "3*x >= 0 |- x >= 0",
}
