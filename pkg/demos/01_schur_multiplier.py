"""
Schur multipliers three ways
============================

The second homology of a finite group can be read off a presentation in
several independent ways. Here the Magnus kernel, Hopf's commutator
formula and the bar complex are put side by side.
"""

from relhom import bar_homology, h_even, hopf_h2
from relhom.corpus import presented

# %%
# Each group is enumerated from its presentation, then the three
# computations run on the same Cayley table.
for name in ["c2", "c3", "c4", "v4", "s3"]:
    pg = presented(name)
    magnus = h_even(pg, 1).invariants
    hopf = hopf_h2(pg)
    bar = bar_homology(pg.group, None, 2)
    print(f"{name:>3}  |G| = {pg.m}   Magnus: {magnus}   Hopf: {hopf}   bar: {bar}")
    assert magnus == hopf == bar

# %%
# Only the Klein four group has a nontrivial multiplier. Its generator is
# an explicit element of the relation module killed by the Magnus map.
res = h_even(presented("v4"), 1)
print("kernel generators:", res.kernel_lifts)
