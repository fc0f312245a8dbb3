"""The alternating group A4, one step at a time.

From the permutation group to its character table, the multiplication
table of R(A4), the relations presenting it, and finally the Jacobian at
the two singular points of Spec(R(A4) (x) Z[xi_12]).

    python3 demos/a4_walkthrough.py
"""

from greenring.chartable import dixon_character_table
from greenring.cyclotomic import factorization_shape, phi_derivative_at
from greenring.greenring import structure_constants
from greenring.groups import fusion_map, make_group
from greenring.singular import analyze, enumerate_points, extended_jacobian, jacobian


def show_matrix(M):
    for row in M.rows():
        print("    [" + ", ".join(f"{str(v):>8}" for v in row) + "]")


G = make_group("A4")
print(f"A4 has order {G.order} and {len(G.classes)} conjugacy classes")
for c in G.classes:
    print(f"  class of size {c.size}, elements of order {c.element_order}")

t = dixon_character_table(G)
print("\nCharacter table over Z[xi_12] (xi a primitive 12th root of unity):")
for row in t.values:
    print("  " + "  ".join(f"{str(v):>16}" for v in row))

R = structure_constants(t)
print("\nR(A4) = Z[x_2, x_3, x_4] modulo")
for rel in R.relation_set:
    print(f"  {rel}")

# the primes dividing the order are where components can meet
for p in (2, 3):
    print(f"\np = {p}: Phi_12 mod {p} is {factorization_shape(12, p)}")
    print(f"  {p}-fusion of classes: {fusion_map(G, p)}")
    for pt in enumerate_points(R, p, group=G):
        print(f"  singular point over Q = {pt.prime}, classes {pt.fiber} meet")
        print("  Jacobian at the point:")
        show_matrix(jacobian(R, pt))
        ext = extended_jacobian(R, pt)
        print(f"  Phi_12'(zeta) = {phi_derivative_at(pt.prime)}; extended Jacobian is {ext.nrows}x{ext.ncols}")

print("\nSummary:")
for rep in analyze(R, group=G):
    print(
        f"  p={rep.point.p}  f={rep.point.prime.f}  edim={rep.edim}  "
        f"dim T(C/Z)={rep.dimT_Z}  dim T(C/Z[xi])={rep.dimT_Zxi}"
    )
