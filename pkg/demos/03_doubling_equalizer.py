"""
Even homology as an equalizer
=============================

Glue a presentation to itself. The two inclusions into the free product
induce maps on coinvariants of relation-module tensor powers, and the
subgroup where they agree is the even homology of the group.
"""

from relhom import coproduct, equalizer_limit, h_even
from relhom.corpus import presented

P = presented("v4")
cp = coproduct(P, P)
print("doubling:", cp.obj.presentation.format().replace("\n", "  "))
print("relation module rank:", P.schreier.rank, "->", cp.obj.schreier.rank)

# %%
# The equalizer is computed without ever touching the Magnus embedding,
# then compared with the Magnus kernel as a subgroup.
for n in (1, 2):
    res = equalizer_limit(P, n)
    print(f"n={n}: equalizer = {res.invariants} ; h_even = {h_even(P, n).invariants} ; "
          f"same subgroup: {res.matches}")
