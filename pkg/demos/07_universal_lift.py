"""
The char-2 universal lift of a symplectic space
===============================================
"""
from polarspaces.gf import make_field
from polarspaces.polar import lift_report

for n in (1, 2, 3):
    r = lift_report(make_field(2), n)
    print(f"n={n}: {r.points} symplectic points, {r.lift_points} lift points, ok={r.ok}")
