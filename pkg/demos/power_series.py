"""Lazy power series in an infinitesimal e > 0.

Run:  python demos/power_series.py
"""
# %%
from signfree import LazySeries, format_series, hensel_newton_root, series_abs, series_frac, series_inverse

e = LazySeries.epsilon()

# %%
print(format_series(series_inverse(1 - e), 8))

# %% [markdown]
# Coefficients are computed on demand and cached.  The root of X^2 + X - e
# that vanishes at e = 0 has the Catalan numbers (with signs) as coefficients.

# %%
root = hensel_newton_root([-e, 1, 1])
print(format_series(root, 8))

# %% [markdown]
# The sign of a series is read off its first nonzero coefficient.

# %%
print(format_series(series_abs(-e + 2 * e**2), 4))
print(format_series(series_frac(e**2, e, 20), 6))
