"""
Fields, quadratic forms and their sign
======================================

Build F_81, look at the two forms Tr(x^2) and Tr(theta x^2), and read off
rank, sign and Witt index.  Then check one character sum exactly.
"""

# %%
import numpy as np

from quadcodes import analyze, build_field
from quadcodes.cyclotomic import gauss_sum, weil_identity
from quadcodes.qform import FormSpec, find_isotropic, witt_index

F = build_field(3, 4)
print("modulus (constant term first):", F.modulus)
print("primitive element coordinates:", F.coords(F.primitive))

# %%
# Elements are integers 0..q-1 packing their coordinates base p, so all
# arithmetic is table lookups on numpy arrays.
xs = F.elements()
print("trace fiber sizes:", np.bincount(F.trace(xs), minlength=F.p))

# %%
# The two forms differ only by a nonsquare factor, which flips the sign.
for name, a in (("Tr(x^2)", 1), ("Tr(theta x^2)", F.primitive)):
    form = FormSpec.trace_square(F, a)
    prof = analyze(form)
    print(f"{name:14s} rank={prof.rank} sign={prof.sign:+d} witt index={witt_index(form)}")
    print("   Gram matrix rows:", prof.gram.tolist())

# %%
# A totally isotropic plane exists only for the + form.
form = FormSpec.trace_square(F, F.primitive)
J = find_isotropic(form, 2)
print("isotropic plane basis:", J.basis)

# %%
# Weil sums live in Z[zeta_3].  Multiplying by g^R (g the Gauss sum) lands
# both sides in a form that can be compared coefficient by coefficient.
prof = analyze(form)
g = gauss_sum(3)
print("g^2 =", g * g)
lhs, rhs = weil_identity(prof, b=5)
print("direct:", lhs, " closed form:", rhs, " equal:", lhs == rhs)
