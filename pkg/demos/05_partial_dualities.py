"""
Partial dualities and the three-generators property
===================================================

Three pairwise opposite generators M, M1, M2 induce a map from points of M to hyperplanes of M.
"""
from polarspaces import duality as du
from polarspaces import forms as fm
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace

for name, form in [("W(3,2)", fm.canonical_symplectic(make_field(2), 2)),
                   ("Q(4,3)", fm.parabolic(make_field(3)))]:
    S = PolarSpace(form, name=name)
    M1, M2 = du.opposite_generator_pairs(S)[0]
    M = du.common_opposites(S, M1, M2)[0]
    d = du.build_pi(S, M, M1, M2)
    print(name, "->", du.classify(S, d).kind)
    v = du.theorem_suite_3G(S)
    print("   regular iff every pair has 3G:", v.holds, v.detail)
