"""
Odd degrees from the five-term sequence
=======================================

Odd homology is the first homology of a tensor power of the relation
module. The five-term sequence relates it to the even degree below and
every junction is checked as an equality of lattices.
"""

from relhom import bar_homology, five_term, h_odd
from relhom.corpus import presented

# %%
# The report lists every exactness check along with the groups involved.
rep = five_term(presented("s3"), None, 2)
print("H_4 =", rep.h_even.invariants)
print("H_1(F, N) =", rep.h1_free.invariants)
print("H_1(G, N) =", rep.h1_group)
for label, ok in rep.checks:
    print(f"  {'PASS' if ok else 'FAIL'} {label}")

# %%
# Compare with the bar complex in degree three.
for name in ["c2", "c3", "c4", "v4", "s3"]:
    pg = presented(name)
    print(f"{name:>3}  H_3 = {h_odd(pg, 1)}   bar: {bar_homology(pg.group, None, 3)}")
