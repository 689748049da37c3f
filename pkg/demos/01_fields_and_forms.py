"""
Finite fields and reflexive forms
=================================

Field elements are small ints; the field object does the arithmetic.
"""
from polarspaces import forms as fm
from polarspaces.gf import make_field, parse_field

F4 = make_field(2, 2)
x = F4.gen
print("x * x =", x * x, " sigma(x) =", F4.sigma(int(x)))
print("gf(9) is cached:", parse_field("gf(9)") is make_field(3, 2))

# the three canonical families on V + V*
for form in (fm.canonical_symplectic(make_field(3), 2),
             fm.canonical_hyperbolic(make_field(2), 3),
             fm.canonical_hermitian(F4, 2)):
    print(form.kind, form.n, "singular points:", len(form.singular_points()))

# a parabolic quadric in char 2 has a nucleus; quotienting it gives the symplectic space
par = fm.parabolic(make_field(2))
print("radical of Q(4,2):", par.radical().rows)
print("quotient kind:", fm.minimal_embedding_quotient(par).target.kind)
