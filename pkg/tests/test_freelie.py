import itertools

import pytest

from relhom.corpus import identified, presented
from relhom.freelie import (bracket_expansion, free_lie_submodule, gamma_quotient, j_n,
                            l_n_map, lie_basis, lyndon_words, phi_n_map,
                            standard_factorization, torsion_report, witt_number)
from relhom.intlattice import AbInvariants, IntMat, cokernel_invariants, smith
from relhom.prescat import _power_map, coproduct, induced_relmod_map, lie_induced_map
from relhom.zgmod import kernel_of_induced


def test_lyndon_examples():
    assert lyndon_words(2, 1) == [(0,), (1,)]
    assert lyndon_words(2, 2) == [(0, 1)]
    assert lyndon_words(2, 3) == [(0, 0, 1), (0, 1, 1)]
    assert lyndon_words(1, 2) == []


def _brute_lyndon(r, n):
    out = []
    for w in itertools.product(range(r), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            out.append(w)
    return out


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_witt_dimension(r, n):
    words = lyndon_words(r, n)
    assert len(words) == witt_number(r, n)
    assert words == sorted(words)
    if r ** n <= 5000:
        assert words == _brute_lyndon(r, n)


def test_bracket_examples():
    assert bracket_expansion((0, 1), 2) == {1: 1, 2: -1}
    assert bracket_expansion((0,), 2) == {0: 1}
    # [a,[a,b]] = aab - 2 aba + baa
    assert bracket_expansion((0, 0, 1), 2) == {0b001: 1, 0b010: -2, 0b100: 1}


def _poly_mul(p, q):
    out = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return out


def _poly_bracket(p, q):
    out = dict(_poly_mul(p, q))
    for k, v in _poly_mul(q, p).items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _brute_expand(w):
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return _poly_bracket(_brute_expand(u), _brute_expand(v))


@pytest.mark.parametrize("r,n", [(2, 4), (3, 3), (2, 5)])
def test_bracket_against_polynomial_expansion(r, n):
    for w in lyndon_words(r, n):
        brute = {}
        for word, c in _brute_expand(w).items():
            idx = 0
            for a in word:
                idx = idx * r + a
            brute[idx] = c
        assert bracket_expansion(w, r) == brute
        # leading term of a Lyndon bracketing is the word itself with coefficient 1
        idx = 0
        for a in w:
            idx = idx * r + a
        assert bracket_expansion(w, r)[idx] == 1


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_expansions_independent(r, n):
    E = lie_basis(r, n).expansions
    assert smith(E, transforms=False).rank == witt_number(r, n)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_degree_two_saturation(r):
    E = lie_basis(r, 2).expansions
    assert not cokernel_invariants(E.T).torsion


def test_free_lie_submodule_examples(c2, v4):
    L, inc = free_lie_submodule(c2.relmod, 2)
    assert L.rank == 0
    L, inc = free_lie_submodule(c2.relmod, 3)
    assert L.rank == 0
    L, inc = free_lie_submodule(v4.relmod, 2)
    assert L.rank == 10
    for g in v4.group.elements():
        assert inc.target.action[g] @ inc.matrix == inc.matrix @ L.action[g]


def test_gamma_examples(c2, v4):
    assert gamma_quotient(c2, 2).invariants.is_zero()
    assert gamma_quotient(c2, 1).invariants == AbInvariants(1)
    assert gamma_quotient(v4, 1).invariants == AbInvariants(2, (2,))


def test_l_n_examples(c2, v4):
    l1 = l_n_map(v4, 1)
    assert l1.matrix == IntMat.identity(v4.relmod.rank)
    assert kernel_of_induced(l1).invariants.is_zero()
    l2 = l_n_map(c2, 2)
    assert l2.source.ambient_rank == 0
    l2 = l_n_map(v4, 2)
    assert l2.target.ambient_rank == 25
    l2.check_well_defined()


def test_phi_n_examples(c2, v4):
    phi = phi_n_map(c2, 1)
    assert kernel_of_induced(phi).invariants.is_zero()
    assert kernel_of_induced(phi_n_map(c2, 2)).invariants.is_zero()
    K = kernel_of_induced(phi_n_map(v4, 2)).invariants
    assert K.free_rank == 0 and 4 % K.exponent == 0


def test_j_n_examples(c2, c3, v4):
    assert j_n(v4, 1).is_zero()
    assert j_n(c3, 2).is_zero()
    assert j_n(c2, 3).is_zero()


@pytest.mark.parametrize("name,n", [("c2", 2), ("v4", 2), ("c3", 2), ("c3", 3), ("s3", 2),
                                    ("c3_2gen", 3), ("v4_3gen", 2), ("s3", 3)])
def test_torsion_report(name, n):
    rep = torsion_report(identified(name), n)
    assert rep.passed
    assert all(n % x == 0 for x in rep.j_n.torsion) and rep.j_n.free_rank == 0


def test_torsion_report_c3_3():
    rep = torsion_report(presented("c3"), 3)
    assert rep.passed and rep.j_n.is_zero()


@pytest.mark.parametrize("name", ["c3", "v4", "s3", "c3_2gen"])
def test_l_n_naturality(name):
    # the l_n square commutes for the coproduct inclusion
    P = identified(name)
    cp = coproduct(P, P)
    for n in [k for k in (2, 3) if cp.obj.schreier.rank ** k <= 2000]:
        iota = induced_relmod_map(cp.iota1)
        lie_map, Ls, Lt = lie_induced_map(iota, n)
        l_src = l_n_map(P, n)
        l_tgt = l_n_map(cp.obj, n)
        tens = _power_map(iota, n)
        left = l_tgt.matrix @ lie_map.matrix
        right = tens.matrix @ l_src.matrix
        diff = left - right
        for j in range(diff.cols):
            assert l_tgt.target.contains_relation(diff.column(j))
