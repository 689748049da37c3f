"""
A countable-rank example in characteristic 2
============================================

Vectors are finitely supported; one constant tail stands for the all-ones functional.
"""
from polarspaces import infmodel as im
from polarspaces.gf import make_field

F = make_field(2)
qp = im.InfForm("qprime", F)
U01 = im.pattern("U01", F)

print("q'(u_0 + u_1) =", im.eval_quadratic(qp, im.u_pair(F, 0, 1)))
print("e_0 perp U_01:", im.perp_test(qp, im.e(F, 0), U01), "| e_2 perp U_01:", im.perp_test(qp, im.e(F, 2), U01))

rhs = im.q_prime_perp_of_U01(F)
m = im.reduce_membership(im.u(F, 5), rhs)
print("u_5 in the perp, certificate:", [(c, g) for c, g in m.certificate])

st = im.star_of_U01(F)
print("star of U_01:", st.points, "points,", st.generators_per_subgenerator, "generators per line")

rep = im.nonregularity_witness(make_field(2, 2))
for f in rep.facts:
    print(f"  [{f.status}] {f.name}" + (f" = {f.value}" if f.value is not None else ""))
print("counts:", rep.counts)
