"""Checking collapse certificates, then a complex square root by real radicals.

Run:  python demos/certificates_and_csqrt.py
"""
# %%
from signfree import CollapseCertificate, RingPresentation, check_collapse_certificate, complex_sqrt_cover
from signfree.certificates import ConeTerm, IdealTerm
from signfree.mpoly import MPoly

x = MPoly.var("x")

# %% [markdown]
# 1 + x^2 = 0 has no real solution; the certificate is 1 + x^2 + (-1)(1 + x^2) = 0.

# %%
pres = RingPresentation(("x",), eq0=("1 + x^2",))
cert = CollapseCertificate(p=(ConeTerm(1, x),), z=(IdealTerm(MPoly.const(-1), 0),))
print(check_collapse_certificate(pres, cert))

wrong = CollapseCertificate(p=(ConeTerm(1, x),), z=(IdealTerm(MPoly.const(-2), 0),))
print(check_collapse_certificate(pres, wrong))

# %%
c = complex_sqrt_cover(3, 4)
print("sqrt(3 + 4i) =", c.u, "+ i *", c.v)
print("checks:", c.square_ok, c.sign_ok, c.identity_ok)
