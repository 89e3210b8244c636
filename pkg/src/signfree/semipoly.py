"""Sup-inf normal forms of lattice-ring terms and univariate function equality."""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, product

from .algebraic import algebraic_sign, isolate_real_roots, algebraic_compare, LT
from .mpoly import MPoly, format_mpoly
from .poly import DomainError
from . import terms as T


@dataclass(frozen=True)
class SupInfNF:
    """``sup_i inf_j families[i][j]`` with polynomial entries."""

    families: tuple

    def __call__(self, point):
        return max(min(p(point) for p in fam) for fam in self.families)

    evaluate = __call__

    def polys(self):
        seen = {}
        for fam in self.families:
            for p in fam:
                seen.setdefault(p, None)
        return list(seen)

    def is_poly(self):
        return len(self.families) == 1 and len(self.families[0]) == 1

    def __str__(self):
        return format_nf(self)

    def to_json(self):
        return [[format_mpoly(p) for p in fam] for fam in self.families]

    def to_term(self):
        return T.sup_all(T.inf_all(T.from_mpoly(p) for p in fam) for fam in self.families)


def format_nf(nf):
    inner = ["inf{" + ", ".join(format_mpoly(p) for p in fam) + "}" for fam in nf.families]
    return "sup{" + ", ".join(inner) + "}"


# pruning ------------------------------------------------------------------


def _prune_inner(fam):
    # inside an inf, of two entries differing by a constant keep the smaller
    best = {}
    for f in fam:
        sh = f.shape()
        g = best.get(sh)
        if g is None or f.const_value() < g.const_value():
            best[sh] = f
    return tuple(sorted(best.values(), key=MPoly.key))


def _profile(fam):
    return {f.shape(): f.const_value() for f in fam}


def _below(small, big):
    """Sufficient test for inf(small) <= inf(big): each entry of big is
    bounded below by an entry of small differing from it by a constant."""
    for sh, c in big.items():
        d = small.get(sh)
        if d is None or d > c:
            return False
    return True


def _make(families):
    fams = list(dict.fromkeys(_prune_inner(f) for f in families))
    profiles = [_profile(f) for f in fams]
    # a family that absorbs another has all its shapes among the other's,
    # so indexing each family under one of its shapes finds every candidate
    by_shape = {}
    for j, prof in enumerate(profiles):
        by_shape.setdefault(min(prof, key=hash), []).append(j)
    keep = []
    for i, prof in enumerate(profiles):
        dropped = False
        for sh in prof:
            for j in by_shape.get(sh, ()):
                if j == i or not _below(prof, profiles[j]):
                    continue
                if _below(profiles[j], prof) and j > i:
                    continue
                dropped = True
                break
            if dropped:
                break
        if not dropped:
            keep.append(fams[i])
    keep.sort(key=lambda fam: tuple(p.key() for p in fam))
    if all(p.is_const() for fam in keep for p in fam):
        value = max(min(p.const_value() for p in fam) for fam in keep)
        return SupInfNF(((MPoly.const(value),),))
    return SupInfNF(tuple(keep))


# lattice-ring operations on normal forms ----------------------------------


def nf_poly(p):
    return SupInfNF(((p,),))


def nf_add(a, b):
    return _make(
        tuple(f + g for f in fa for g in gb) for fa in a.families for gb in b.families
    )


def nf_sup(a, b):
    return _make(a.families + b.families)


def nf_inf(a, b):
    return _make(fa + gb for fa in a.families for gb in b.families)


def nf_neg(a):
    # -(sup inf f) = inf sup (-f), then distribute back over choice functions
    return _make(tuple(-f for f in choice) for choice in product(*a.families))


def nf_scale(a, c):
    c = Fraction(c)
    if c == 0:
        return nf_poly(MPoly())
    if c < 0:
        return nf_neg(nf_scale(a, -c))
    return _make(tuple(f * c for f in fam) for fam in a.families)


def times_pos_part(a, b):
    r"""a * b^+ as a normal form, by the f-ring identity
    a b^+ = (ab /\ (a^2+1) b) \/ (-(a^2+1) b /\ 0)."""
    w = (a * a + 1) * b
    return _make([(a * b, w), (-w, MPoly())])


def pos_times_nf(d, a):
    r"""d^+ * A for a polynomial d.

    With W = 1 + (sum of squares of the entries of A), so that |A| <= W, the
    identity d^+ A = sup_k inf(d g_k1, ..., d g_kl, W d) \/ inf(-W d, 0)
    holds in every totally ordered ring (check d >= 0 and d < 0 separately),
    hence in every f-ring.
    """
    if d.is_const():
        c = d.const_value()
        return nf_scale(a, c) if c > 0 else nf_poly(MPoly())
    if a.is_poly():
        return times_pos_part(a.families[0][0], d)
    w = MPoly.const(1)
    for p in a.polys():
        w = w + p * p
    wd = w * d
    fams = [tuple(d * g for g in fam) + (wd,) for fam in a.families]
    fams.append((-wd, MPoly()))
    return _make(fams)


def nf_mul_poly(p, a, neg_a=None):
    r"""p * A for a polynomial p.

    With W = 1 + (sum of squares of the entries of A), so that |A| <= W,
        p A = sup_k inf(p g_k1, ..., W p)  \/  sup_k' inf(-p h_k'1, ..., -W p)
    where the h are the entries of the normal form of -A. For p >= 0 the
    first part is pA and the second is -Wp <= pA; for p < 0 the first part
    is Wp <= pA and the second is pA.
    """
    if p.is_const():
        return nf_scale(a, p.const_value())
    if a.is_poly():
        return nf_poly(p * a.families[0][0])
    if neg_a is None:
        neg_a = nf_neg(a)
    w = MPoly.const(1)
    for f in a.polys():
        w = w + f * f
    wp = w * p
    fams = [tuple(p * g for g in fam) + (wp,) for fam in a.families]
    fams += [tuple(-p * h for h in fam) + (-wp,) for fam in neg_a.families]
    return _make(fams)


def _sup_inf(grid):
    out = None
    for row in grid:
        r = row[0]
        for x in row[1:]:
            r = nf_inf(r, x)
        out = r if out is None else nf_sup(out, r)
    return out


def nf_mul(a, b):
    if a.is_poly():
        return nf_mul_poly(a.families[0][0], b)
    if b.is_poly():
        return nf_mul_poly(b.families[0][0], a)
    zero = nf_poly(MPoly())
    neg_a = nf_neg(a)
    a_pos, a_neg = nf_sup(a, zero), nf_sup(neg_a, zero)
    # -(a^+) = (-a) /\ 0 and -(a^-) = a /\ 0
    neg_a_pos, neg_a_neg = nf_inf(neg_a, zero), nf_inf(a, zero)

    def times(c, neg_c, nf):
        # c >= 0 distributes over the families of nf
        return _sup_inf([[nf_mul_poly(g, c, neg_c) for g in fam] for fam in nf.families])

    # A B = A^+ B + A^- (-B)
    return nf_add(times(a_pos, neg_a_pos, b), times(a_neg, neg_a_neg, nf_neg(b)))


def to_sup_inf_nf(t):
    """Rewrite a term into sup-inf normal form (same function on every f-ring)."""
    if isinstance(t, str):
        t = T.parse_term(t)
    return _nf(T.desugar(t))


@lru_cache(maxsize=4096)
def _nf(t):
    if isinstance(t, T.Const):
        return nf_poly(MPoly.const(t.value))
    if isinstance(t, T.Var):
        return nf_poly(MPoly.var(t.name))
    if isinstance(t, T.Neg):
        return _negate(t.arg)
    if isinstance(t, T.Add):
        return nf_add(_nf(t.left), _nf(t.right))
    if isinstance(t, T.Sup):
        return nf_sup(_nf(t.left), _nf(t.right))
    if isinstance(t, T.Inf):
        return nf_inf(_nf(t.left), _nf(t.right))
    if isinstance(t, T.Mul):
        return _mul(t.left, t.right)
    raise TypeError(f"unexpected node {t!r}")


# Products are pushed through the term structure with
#   (l \/ r) y = r y + (l - r)^+ y,   (l /\ r) y = l y + (l - r)^+ (-y),
# where the nonnegative (l - r)^+ distributes over sup and inf. Negating a
# normal form is exponential, so signs are moved onto operands instead of
# onto the (larger) products.


def _negate(t):
    """Normal form of -t, pushing the sign down the term."""
    if isinstance(t, (T.Const, T.Var)):
        return nf_poly(-_nf(t).families[0][0])
    if isinstance(t, T.Neg):
        return _nf(t.arg)
    if isinstance(t, T.Add):
        return nf_add(_negate(t.left), _negate(t.right))
    if isinstance(t, T.Sup):
        return nf_inf(_negate(t.left), _negate(t.right))
    if isinstance(t, T.Inf):
        return nf_sup(_negate(t.left), _negate(t.right))
    if isinstance(t, T.Mul):
        return _mul(t.left, T.Neg(t.right))
    return nf_neg(_nf(t))


def _mul(x, y):
    nx, ny = _nf(x), _nf(y)
    if nx.is_poly():
        return _poly_times(nx.families[0][0], y)
    if ny.is_poly():
        return _poly_times(ny.families[0][0], x)
    for u, v in ((x, y), (y, x)):
        if isinstance(u, T.Sup):
            d = T.Add(u.left, T.Neg(u.right))
            return nf_add(_mul(u.right, v), _pos_part_times(d, v))
        if isinstance(u, T.Inf):
            d = T.Add(u.left, T.Neg(u.right))
            return nf_add(_mul(u.left, v), _pos_part_times(d, T.Neg(v)))
    for u, v in ((x, y), (y, x)):
        if isinstance(u, T.Add):
            return nf_add(_mul(u.left, v), _mul(u.right, v))
    for u, v in ((x, y), (y, x)):
        if isinstance(u, T.Mul):
            return _mul(u.left, T.Mul(u.right, v))
    if isinstance(x, T.Neg) and isinstance(y, T.Neg):
        return _mul(x.arg, y.arg)
    return nf_mul(nx, ny)


def _poly_times(p, y):
    if p.is_const():
        return nf_scale(_nf(y), p.const_value())
    ny = _nf(y)
    if ny.is_poly():
        return nf_poly(p * ny.families[0][0])
    if isinstance(y, T.Sup):
        d = T.Add(y.left, T.Neg(y.right))
        return nf_add(_poly_times(p, y.right), _poly_times_pos(p, d))
    if isinstance(y, T.Inf):
        d = T.Add(y.left, T.Neg(y.right))
        return nf_add(_poly_times(p, y.left), _poly_times_pos(-p, d))
    if isinstance(y, T.Add):
        return nf_add(_poly_times(p, y.left), _poly_times(p, y.right))
    if isinstance(y, T.Neg):
        return _poly_times(-p, y.arg)
    return nf_mul_poly(p, ny)


def _poly_times_pos(p, d):
    """p * d^+ for a polynomial p and a term d."""
    nd = _nf(d)
    if nd.is_poly():
        return times_pos_part(p, nd.families[0][0])
    zero = nf_poly(MPoly())
    n = nf_sup(nd, zero)
    return nf_mul_poly(p, n, nf_inf(nf_neg(nd), zero))


def _pos_part_times(d, y):
    """d^+ * y."""
    nd, ny = _nf(d), _nf(y)
    if nd.is_poly():
        return pos_times_nf(nd.families[0][0], ny)
    zero = nf_poly(MPoly())
    n = nf_sup(nd, zero)
    neg_n = nf_inf(nf_neg(nd), zero)
    # n >= 0 distributes over the families of y
    return _sup_inf([[nf_mul_poly(g, n, neg_n) for g in fam] for fam in ny.families])


# univariate equality -----------------------------------------------------


@dataclass(frozen=True)
class Equal:
    cells: int = 0

    def to_json(self):
        return {"result": "Equal", "cells": self.cells}


@dataclass(frozen=True)
class DiffersAt:
    witness: Fraction
    left_value: Fraction
    right_value: Fraction

    def to_json(self):
        from .rational import format_rational as fr

        return {
            "result": "DiffersAt",
            "witness": fr(self.witness),
            "values": [fr(self.left_value), fr(self.right_value)],
        }


def _realizer(nf, var, x):
    """Polynomial attaining the value of ``nf`` at the rational x."""
    best = None
    for fam in nf.families:
        low = min(fam, key=lambda p: p({var: x}))
        if best is None or low({var: x}) > best({var: x}):
            best = low
    return best


def _alg_realizer(nf, var, alpha):
    def cmp(p, q):
        return algebraic_sign((p - q).to_unipoly(var), alpha)

    best = None
    for fam in nf.families:
        low = fam[0]
        for p in fam[1:]:
            if cmp(p, low) < 0:
                low = p
        if best is None or cmp(low, best) > 0:
            best = low
    return best


def univar_semipoly_compare(s1, s2):
    """Decide whether two univariate terms define the same function on Q."""
    if isinstance(s1, str):
        s1 = T.parse_term(s1)
    if isinstance(s2, str):
        s2 = T.parse_term(s2)
    names = sorted(set(T.term_variables(s1)) | set(T.term_variables(s2)))
    if len(names) > 1:
        raise DomainError(f"univariate comparison got variables {names}")
    var = names[0] if names else "x"
    a, b = to_sup_inf_nf(s1), to_sup_inf_nf(s2)
    polys = list(dict.fromkeys(a.polys() + b.polys()))
    roots = []
    for p, q in combinations(polys, 2):
        d = (p - q).to_unipoly(var)
        if d.degree >= 1:
            roots.extend(r for r, _ in isolate_real_roots(d))
    roots = _dedup_sorted(roots)

    samples = []
    if not roots:
        samples.append(Fraction(0))
    else:
        samples.append(_floor_below(roots[0]))
        for i, r in enumerate(roots):
            samples.append(r)
            if i + 1 < len(roots):
                samples.append(_rational_between(r, roots[i + 1]))
        samples.append(_ceil_above(roots[-1]))

    for s in samples:
        if isinstance(s, Fraction):
            pa, pb = _realizer(a, var, s), _realizer(b, var, s)
            va, vb = pa({var: s}), pb({var: s})
            if va != vb or pa != pb:
                return DiffersAt(s, va, vb)
        else:
            pa, pb = _alg_realizer(a, var, s), _alg_realizer(b, var, s)
            if algebraic_sign((pa - pb).to_unipoly(var), s) != 0:
                # unreachable for continuous functions; kept as a safety net
                raise AssertionError("disagreement at a breakpoint but not on an adjacent cell")
    return Equal(cells=len(roots) + 1)


def _dedup_sorted(values):
    from functools import cmp_to_key

    values = sorted(values, key=cmp_to_key(algebraic_compare))
    out = []
    for v in values:
        if not out or algebraic_compare(out[-1], v) != 0:
            out.append(v)
    return out


def _floor_below(alpha):
    import math

    return Fraction(math.floor(alpha.lo) - 1)


def _ceil_above(alpha):
    import math

    return Fraction(math.ceil(alpha.hi) + 1)


def _rational_between(alpha, beta):
    """A rational strictly between alpha < beta."""
    if alpha.is_rational and beta.is_rational:
        return (alpha.lo + beta.lo) / 2
    width = (beta.hi - alpha.lo) or Fraction(1)
    while True:
        a, b = alpha.refine(width), beta.refine(width)
        m = (a.lo + a.hi + b.lo + b.hi) / 4
        if algebraic_compare(alpha, _exact(m)) == LT and algebraic_compare(_exact(m), beta) == LT:
            return m
        width /= 4


def _exact(q):
    from .algebraic import RealAlgebraic

    return RealAlgebraic.exact(q)


# sorting combinators -------------------------------------------------------


def tri_sort(values):
    """Tri_k = min over k-subsets of the max of the subset, for k = 1..n."""
    values = list(values)
    if not values:
        raise DomainError("tri_sort needs at least one value")
    n = len(values)
    return [min(max(sub) for sub in combinations(values, k)) for k in range(1, n + 1)]


def tri_term(k, terms_):
    """The lattice term Tri_k(t_1, ..., t_n) as an inf of sups."""
    terms_ = list(terms_)
    return T.inf_all(T.sup_all(sub) for sub in combinations(terms_, k))


def tri_term_dual(k, terms_):
    """Tri_k written as a sup of infs over (n-k+1)-subsets."""
    terms_ = list(terms_)
    n = len(terms_)
    return T.sup_all(T.inf_all(sub) for sub in combinations(terms_, n - k + 1))
