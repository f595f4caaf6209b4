"""
Torsion in lower central quotients
==================================

The quotient of the n-th lower central term of the relation subgroup by
its commutator with the free group is a free Lie construction on the
relation module. Its torsion is controlled by n.
"""

from relhom import gamma_equalizer, gamma_quotient, torsion_report
from relhom.corpus import presented

# %%
# In degree two the torsion is killed by four, in higher degree by n.
for name, n in [("v4", 2), ("c3", 2), ("c3", 3), ("s3", 2)]:
    rep = torsion_report(presented(name), n)
    print(f"{name} n={n}: gamma = {rep.gamma}   J_n = {rep.j_n}   ker phi = {rep.ker_phi}")
    for label, ok in rep.checks:
        print(f"    {'PASS' if ok else 'FAIL'} {label}")

# %%
# On the doubling the equalizer of the Lie quotients is torsion, and it
# vanishes for a group of order prime to n.
print("C3, n=2:", gamma_equalizer(presented("c3"), 2).invariants)
print("V4, n=2:", gamma_equalizer(presented("v4"), 2).invariants)
print("gamma_2 of V4:", gamma_quotient(presented("v4"), 2).invariants)
