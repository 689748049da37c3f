"""
Polar spaces as bitmask geometries
==================================

Points are indexed; subsets of points are Python ints used as bitmasks.
"""
from polarspaces import forms as fm
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace, is_rosette, popcount, star

S = PolarSpace(fm.canonical_symplectic(make_field(2), 2), name="W(3,2)")
print(S.census())

a, b = S.opposite_point_pairs()[0]
print("hyperbolic line through two opposite points has", popcount(S.hyperbolic_line(a, b)), "points")

# the perp of a point is a rosette of lines through it
print("p^perp is a rosette:", is_rosette(S, S.perp_masks[0]))

# the star of a point of W(5,2) is again a symplectic quadrangle
S6 = PolarSpace(fm.canonical_symplectic(make_field(2), 3))
st = star(S6, 1)
print("star of a point in W(5,2):", st.geometry.N, "points, form", st.form.kind)
