"""
Complements and opposite generators
===================================

Every generator of a catalog space V + V* gets an explicit complement.
"""
from polarspaces import forms as fm
from polarspaces import regularity as rg
from polarspaces.gf import make_field
from polarspaces.polar import PolarSpace, bits

S = PolarSpace(fm.canonical_symplectic(make_field(2), 3), name="W(5,2)")
# the diagonal generator spanned by e_i + eta_i
W = S.mask_of(S.span(S.mask(S.index[tuple(int(j in (i, i + 3)) for j in range(6))] for i in range(3))))
c = rg.construct_complement(S, W)
print("W  =", S.span(W).rows)
print("W' =", c.result.rows)
print("W meets W':", not (S.span(W) & c.result).is_zero(), "| W + W' full:", (S.span(W) + c.result).is_full())

# a generator through a point, opposite to two given generators
M1, M2 = next((A, B) for A in S.generators for B in S.generators if not A & B)
p = next(bits(S.all & ~M1 & ~M2))
G = rg.opposite_through_point(S, M1, p, M_avoid=M2)
print("found generator through p opposite to both:", not G & M1 and not G & M2 and bool((G >> p) & 1))
