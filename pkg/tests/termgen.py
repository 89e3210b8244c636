"""Random lattice-ring terms for property tests.

Products take a lattice-free right factor of depth at most 2. Normal forms
of products of two lattice terms grow exponentially, and the unrestricted
generator produces terms whose normal form takes minutes.
"""

from fractions import Fraction

from signfree import terms as T


def random_poly_term(rng, depth, names):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.6:
            return T.Var(rng.choice(names))
        return T.Const(Fraction(rng.randint(-3, 3)))
    op = rng.choice(["add", "mul", "neg"])
    if op == "neg":
        return T.Neg(random_poly_term(rng, depth - 1, names))
    a, b = random_poly_term(rng, depth - 1, names), random_poly_term(rng, depth - 1, names)
    return T.Add(a, b) if op == "add" else T.Mul(a, b)


def random_term(rng, depth, names):
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.65:
            return T.Var(rng.choice(names))
        return T.Const(Fraction(rng.randint(-3, 3)))
    op = rng.choice(["add", "add", "mul", "sup", "inf", "neg", "abs", "pos", "negpart"])
    sub = lambda: random_term(rng, depth - 1, names)  # noqa: E731
    if op == "add":
        return T.Add(sub(), sub())
    if op == "mul":
        return T.Mul(sub(), random_poly_term(rng, min(depth - 1, 2), names))
    if op == "sup":
        return T.Sup(sub(), sub())
    if op == "inf":
        return T.Inf(sub(), sub())
    if op == "neg":
        return T.Neg(sub())
    return {"abs": T.Abs, "pos": T.Pos, "negpart": T.NegPart}[op](sub())


def random_point(rng, names, bound=10):
    return {n: Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for n in names}
