"""
Perp-minimality, regularity and tightness
=========================================

Symplectic spaces are regular; the odd-characteristic parabolic quadric is not.
"""
from polarspaces import forms as fm
from polarspaces import regularity as rg
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace

for name, form in [("W(3,3)", fm.canonical_symplectic(make_field(3), 2)),
                   ("Q(4,3)", fm.parabolic(make_field(3)))]:
    S = PolarSpace(form, name=name)
    a, b = S.opposite_point_pairs()[0]
    print(name, "R2 on one pair:", rg.check_R2(S, a, b).holds,
          "| regular:", rg.space_is_regular(S).holds,
          "| tight:", rg.check_tight(S).holds,
          "| R4:", rg.check_R4(S).holds)
    print("   R2 and R3 agree on every pair:", rg.theorem_suite_RA(S).holds)

# a failing pair comes with a witness generator that misses the hyperbolic line
S = PolarSpace(fm.parabolic(make_field(3)))
a, b = S.opposite_point_pairs()[0]
v = rg.check_R2(S, a, b)
print("witness generator:", sorted(S.indices(v.witness)))
