"""Random mutations of rules and a sampling oracle for refutability."""

import dataclasses
from fractions import Fraction

from signfree import terms as T
from signfree.prover import Atom, Rule


def _nodes(t, path=()):
    yield path, t
    if isinstance(t, (T.Neg, T.Abs, T.Pos, T.NegPart)):
        yield from _nodes(t.arg, path + ("arg",))
    elif isinstance(t, (T.Add, T.Mul, T.Sup, T.Inf)):
        yield from _nodes(t.left, path + ("left",))
        yield from _nodes(t.right, path + ("right",))


def _replace(t, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    return dataclasses.replace(t, **{head: _replace(getattr(t, head), rest, new)})


def mutate_term(rng, t, names):
    nodes = list(_nodes(t))
    kind = rng.choice(["swap", "var", "const", "negate"])
    if kind == "swap":
        cands = [(p, n) for p, n in nodes if isinstance(n, (T.Sup, T.Inf))]
        if cands:
            p, n = rng.choice(cands)
            other = T.Inf if isinstance(n, T.Sup) else T.Sup
            return _replace(t, p, other(n.left, n.right))
    if kind == "var":
        cands = [(p, n) for p, n in nodes if isinstance(n, T.Var)]
        if cands:
            p, n = rng.choice(cands)
            return _replace(t, p, T.Var(rng.choice(names)))
    if kind == "negate":
        cands = [(p, n) for p, n in nodes if isinstance(n, T.Var)]
        if cands:
            p, n = rng.choice(cands)
            return _replace(t, p, T.Neg(n))
    return T.Add(t, T.Const(Fraction(rng.choice([-1, 1]))))


def mutate_rule(rng, rule):
    names = rule.variables()
    concl = Atom(mutate_term(rng, rule.conclusion.term, names), rule.conclusion.relation)
    return Rule(rule.hypotheses, concl, rule.name + " (mutated)")


def sampled_violation(rng, rule, tries=400, bound=6):
    """A random point where the hypotheses hold and the conclusion fails, or None."""
    names = rule.variables()
    for _ in range(tries):
        p = {n: Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for n in names}
        if not rule.holds_at(p):
            return p
    return None
