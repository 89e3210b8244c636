"""Proving and refuting rules about sup and inf in ordered groups.

Run:  python demos/lattice_group_proofs.py
"""
# %%
from signfree import parse_rule, prove_lgroup_rule, to_sup_inf_nf, univar_semipoly_compare
from signfree.prover import lattice_group_corpus
from signfree.terms import parse_term

# %% [markdown]
# Any term built from +, -, scalars, sup and inf has a sup of infs of linear forms.

# %%
print(to_sup_inf_nf(parse_term("abs(x) + abs(y)")))

# %% [markdown]
# The prover splits on the order of pairs of linear forms and closes each
# branch with a linear certificate.

# %%
result = prove_lgroup_rule(parse_rule("|- abs(x + y) <= abs(x) + abs(y)"))
print(type(result).__name__, result.stats)

bad = parse_rule("|- x \\/ y >= x + y")
cex = prove_lgroup_rule(bad)
print(type(cex).__name__, dict(cex.point), "holds there?", bad.holds_at(cex.point))

# %%
corpus = lattice_group_corpus()
proved = sum(type(prove_lgroup_rule(r)).__name__ == "Valid" for r in corpus)
print(f"{proved}/{len(corpus)} corpus rules proved")

# %% [markdown]
# In one variable, semipolynomials can be compared cell by cell.

# %%
print(univar_semipoly_compare("x \\/ (1 - x)", "1 \\/ x \\/ (1 - x)"))
print(univar_semipoly_compare("abs(x)", "x \\/ -x"))
