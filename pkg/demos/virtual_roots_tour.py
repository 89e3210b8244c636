"""A walk through the virtual-root triangle of a quartic.

Run:  python demos/virtual_roots_tour.py
"""
# %%
from fractions import Fraction

from signfree import budan_fourier_index, interval_extrema, ivt_witness, parse_poly, sign_table, virtual_roots

f = parse_poly("x^4 - 6*x^2 + 1/3")
tri = virtual_roots(f)

# %% [markdown]
# Row k holds k numbers for the k-th normalized derivative counted from the top.
# Every entry is exact: either a rational or a root pinned by an isolating interval.

# %%
for level, row in enumerate(tri.rho, start=1):
    print(level, "  ".join(f"{float(r):+.6f}" for r in row))

# %% [markdown]
# The top row is the real-root list when f splits over the reals.  Now a
# polynomial with no real roots: the top row still has four entries, and they
# sit where |f| is smallest.

# %%
g = parse_poly("x^4 + 1")
print([float(r) for r in virtual_roots(g).top()])

# %%
b = budan_fourier_index(tri, Fraction(1, 2))
print("sign changes of the derivatives at 1/2:", b.changes)
print("bracket:", b.lower, b.upper)

# %%
w = ivt_witness(tri, 0, 1)
print("zero between 0 and 1:", float(w.zero), "(clamped entry", w.index, ")")

e = interval_extrema(tri, -1, 3)
print("on [-1, 3]: min", float(e.inf), "max", float(e.sup), "min |f|", float(e.inf_abs))

# %%
for region in sign_table(tri).entries:
    print(type(region).__name__, region.sign, region.flag)
