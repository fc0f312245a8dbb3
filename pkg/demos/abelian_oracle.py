"""Abelian groups have a closed form, which makes them a good oracle.

For G abelian, R(G) is the group ring of the dual group, presented by
x_t^{q_t} - 1 for a basis of characters of orders q_t.  The tangent space at
a point above p then has dimension log_p |G / G^p|, the number of primary
invariants divisible by p.  This script compares that count with the kernel
of the full multiplication-table Jacobian for every abelian group up to
order 32.

    python3 demos/abelian_oracle.py
"""

from greenring.chartable import dixon_character_table
from greenring.cyclotomic import factorize
from greenring.greenring import structure_constants
from greenring.groups import abelian_from_invariants, abelian_groups
from greenring.singular import abelian_tangent_dim, analyze

mismatches = 0
for n in range(2, 33):
    for inv in abelian_groups(n):
        G = abelian_from_invariants(inv)
        R = structure_constants(dixon_character_table(G))
        cells = []
        for p in sorted(factorize(n)):
            expected = abelian_tangent_dim(G, p)
            seen = {r.dimT_Zxi for r in analyze(R, primes=[p], group=G, all_points=True)}
            ok = seen == {expected}
            mismatches += not ok
            cells.append(f"p={p}: {expected}{'' if ok else f' but saw {sorted(seen)}'}")
        label = "x".join(f"C{q}" for q in inv) or "C1"
        print(f"{label:<16} " + ", ".join(cells))

print(f"\n{mismatches} mismatches")
