import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom.corpus import presented
from relhom.errors import InvariantViolation
from relhom.intlattice import AbInvariants, IntMat
from relhom.zgmod import (InducedMap, PresentedAbGroup, ZGMap, ZGModule, coinvariants,
                          identity_map, induced_coinvariant_map, kernel_of_induced,
                          n_torsion, regular_free_module, tensor, tensor_power,
                          trivial_module, untwist_free_coinvariants)


def test_trivial_module(c2):
    assert trivial_module(c2.group, 1).rank == 1
    assert trivial_module(c2.group, 0).rank == 0
    M = trivial_module(c2.group, 2)
    assert all(a == IntMat.identity(2) for a in M.action)


def test_regular_module(c2, c3):
    F = regular_free_module(c2.group, 1)
    g = 1 - c2.group.identity
    assert F.rank == 2 and F.action[g].to_dense() == [[0, 1], [1, 0]]
    assert regular_free_module(c2.group, 0).rank == 0
    F = regular_free_module(c3.group, 2)
    assert F.rank == 6
    gen = c3.quotient.images[0]
    A = F.action[gen]
    assert A @ A @ A == IntMat.identity(6) and A != IntMat.identity(6)


def test_tensor(c2):
    G = c2.group
    assert tensor(trivial_module(G, 2), trivial_module(G, 3)).rank == 6
    F = regular_free_module(G, 1)
    assert tensor(trivial_module(G, 1), F).action == F.action
    FF = tensor(F, F)
    g = 1 - G.identity
    perm = FF.action[g].to_dense()
    fixed = sum(perm[i][i] for i in range(4))
    assert FF.rank == 4 and fixed == 0 and FF.action[g] @ FF.action[g] == IntMat.identity(4)


def test_tensor_power(v4):
    M = v4.relmod
    assert tensor_power(M, 0).rank == 1
    assert tensor_power(M, 1).action == M.action
    assert tensor_power(M, 3).rank == 125


def test_bad_action_rejected(c3):
    swap = IntMat.from_dense([[0, 1], [1, 0]])
    with pytest.raises(InvariantViolation):
        ZGModule.from_generators(c3.group, 2, [c3.quotient.images[0]], [swap])


def test_coinvariants_examples(c2):
    assert coinvariants(regular_free_module(c2.group, 1)).invariants == AbInvariants(1)
    assert coinvariants(trivial_module(c2.group, 3)).invariants == AbInvariants(3)
    assert coinvariants(c2.relmod).invariants == AbInvariants(1)


def test_induced_maps(c2):
    f = induced_coinvariant_map(identity_map(c2.relmod))
    assert f.matrix == IntMat.identity(1)
    mu = induced_coinvariant_map(c2.magnus)
    # both ZG coordinates collapse to one class: multiplication by 2
    proj = mu.target.coordinates.projection_matrix() @ mu.matrix
    assert [abs(x) for x in proj.column(0) if x] == [2]
    assert kernel_of_induced(mu).invariants.is_zero()
    assert kernel_of_induced(f).invariants.is_zero()


def test_kernel_with_torsion_target():
    Z = PresentedAbGroup(1)
    Z4 = PresentedAbGroup(1, IntMat.from_dense([[4]]))
    f = InducedMap(Z, Z4, IntMat.from_dense([[2]]))
    K = kernel_of_induced(f)
    assert K.invariants == AbInvariants(1)
    assert K.contains([2]) and not K.contains([1])


def test_n_torsion_examples():
    P = PresentedAbGroup(3, IntMat.from_dense([[0, 4, 0], [0, 0, 3]]))
    assert n_torsion(P, 2).invariants == AbInvariants(0, (2,))
    assert n_torsion(P, 1).invariants.is_zero()
    Z6 = PresentedAbGroup(1, IntMat.from_dense([[6]]))
    assert n_torsion(Z6, 4).invariants == AbInvariants(0, (2,))


@given(st.lists(st.integers(0, 12), min_size=1, max_size=4), st.integers(1, 12))
@settings(max_examples=80, deadline=None)
def test_n_torsion_matches_arithmetic(moduli, n):
    from math import gcd
    P = PresentedAbGroup(len(moduli), IntMat.diagonal(moduli, len(moduli), len(moduli)))
    expected = [gcd(m, n) if m else 1 for m in moduli]
    got = n_torsion(P, n).invariants
    assert got.free_rank == 0
    assert got.order == __import__("math").prod(expected)


def test_untwist(c2, v4):
    f = untwist_free_coinvariants(trivial_module(c2.group, 1), 1)
    assert f.target.ambient_rank == 1
    f = untwist_free_coinvariants(c2.relmod, 1)
    assert f.target.ambient_rank == 1
    f = untwist_free_coinvariants(v4.relmod, 2)
    assert f.target.ambient_rank == 10


def test_zgmap_equivariance_enforced(s3):
    F = regular_free_module(s3.group, 1)
    T = trivial_module(s3.group, 1)
    bad = IntMat.from_dense([[1] + [0] * 5])
    with pytest.raises(InvariantViolation):
        ZGMap(F, T, bad)
    ZGMap(F, T, IntMat.from_dense([[1] * 6]))
