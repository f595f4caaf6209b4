import pytest

from relhom.corpus import ALIASES, identified, presented
from relhom.errors import InvariantViolation
from relhom.homology import h_even
from relhom.intlattice import AbInvariants, IntMat, same_lattice
from relhom.presentations import Word
from relhom.prescat import (PresMorphism, coproduct, coproduct_injectivity_check,
                            equalizer_limit, error_term_check, find_morphism, gamma_equalizer,
                            identity_morphism, induced_free_map, induced_relmod_map,
                            splitting_check)
from relhom.zgmod import induced_coinvariant_map

PAIRS = [(b, a) for a, (b, _) in ALIASES.items()] + [(x, x) for x in ("trivial", "c2", "c3", "c4", "v4", "s3")]
SMALL = ["trivial", "c2", "c3", "c4", "v4", "s3", "c2_2gen", "c3_2gen", "v4_3gen", "s3_3gen"]


def test_find_morphism_examples():
    c2 = identified("c2")
    assert find_morphism(c2, c2).images == (Word.generator(0),)
    phi = find_morphism(c2, identified("c2_2gen"))
    assert phi.images == (Word.generator(0),)
    phi = find_morphism(identified("v4"), identified("v4_3gen"))
    assert phi.images == (Word.generator(0), Word.generator(1))


def test_morphism_must_lie_over_group():
    v4, v43 = identified("v4"), identified("v4_3gen")
    with pytest.raises(InvariantViolation):
        PresMorphism(v4, v43, (Word.generator(1), Word.generator(0)))


def test_morphism_needs_shared_table():
    with pytest.raises(InvariantViolation):
        find_morphism(presented("c2"), presented("c3"))


def test_coproduct_examples():
    c2 = presented("c2")
    cp = coproduct(c2, c2)
    assert cp.obj.d == 2 and cp.obj.schreier.rank == 3
    assert cp.obj.quotient.images == (c2.quotient.images[0],) * 2
    assert cp.obj.presentation.names == ("x", "x'")
    v4 = presented("v4")
    assert coproduct(v4, v4).obj.schreier.rank == 13
    t = presented("trivial")
    assert coproduct(t, t).obj.schreier.rank == 2


def test_copair_universal():
    s3 = identified("s3")
    s33 = identified("s3_3gen")
    cp = coproduct(s3, s33)
    f = identity_morphism(s3)
    g = find_morphism(s33, s3)
    u = cp.copair(f, g)
    assert u.compose(cp.iota1).images == f.images
    assert u.compose(cp.iota2).images == g.images


def test_induced_relmod_examples():
    c2 = presented("c2")
    assert induced_relmod_map(identity_morphism(c2)).matrix == IntMat.identity(1)
    cp = coproduct(c2, c2)
    i = induced_relmod_map(cp.iota1)
    assert i.matrix.shape == (3, 1)
    lam = cp.copair(identity_morphism(c2), identity_morphism(c2))
    assert induced_relmod_map(lam).matrix @ i.matrix == IntMat.identity(1)


@pytest.mark.parametrize("name", SMALL)
def test_magnus_naturality(name):
    P = identified(name)
    cp = coproduct(P, P)
    for iota in (cp.iota1, cp.iota2):
        lhs = cp.obj.magnus.matrix @ induced_relmod_map(iota).matrix
        rhs = induced_free_map(iota).matrix @ P.magnus.matrix
        assert lhs == rhs


@pytest.mark.parametrize("pair", PAIRS)
def test_split_identities(pair):
    a, b = (identified(x) for x in pair)
    rep = splitting_check(a, b)
    assert rep.passed and len(rep.checks) == 5


@pytest.mark.parametrize("pair", [("c2", "c2"), ("v4", "v4"), ("c3", "c3"), ("s3", "s3_3gen")])
def test_coproduct_injectivity(pair):
    a, b = (identified(x) for x in pair)
    for n in (1, 2):
        assert coproduct_injectivity_check(a, b, n).passed


@pytest.mark.parametrize("name", SMALL)
def test_error_term_vanishes(name):
    for n in (1, 2):
        assert error_term_check(identified(name), n).passed


def test_equalizer_examples():
    assert equalizer_limit(presented("c2"), 1).invariants.is_zero()
    assert equalizer_limit(presented("v4"), 1).invariants == AbInvariants(0, (2,))
    for n in (1, 2):
        assert equalizer_limit(presented("trivial"), n).invariants.is_zero()


@pytest.mark.parametrize("name", SMALL)
def test_equalizer_is_magnus_kernel(name):
    P = identified(name)
    for n in (1, 2):
        res = equalizer_limit(P, n)
        H = h_even(P, n)
        assert res.matches
        assert res.invariants == H.invariants
        # the Magnus-kernel generators lie in and generate the equalizer
        for v in H.kernel_lifts:
            assert res.subgroup.contains(v)
        for v in res.subgroup.lifts:
            assert H.kernel.contains(v)


def test_equalizer_naturality():
    # a morphism P -> P' carries the H_2n lifts of P to H_2n lifts of P'
    v4, v43 = identified("v4"), identified("v4_3gen")
    phi = find_morphism(v4, v43)
    f = induced_relmod_map(phi)
    for n in (1, 2):
        from relhom.prescat import _power_map
        F = induced_coinvariant_map(_power_map(f, n))
        H, H2 = h_even(v4, n), h_even(v43, n)
        for v in H.kernel_lifts:
            assert H2.kernel.contains(F(v))


def test_gamma_equalizer_examples():
    assert gamma_equalizer(presented("c2"), 2).invariants.is_zero()
    assert gamma_equalizer(presented("c3"), 2).invariants.is_zero()
    res = gamma_equalizer(presented("v4"), 2)
    assert res.matches and res.invariants.free_rank == 0 and 4 % res.invariants.exponent == 0


def test_gamma_equalizer_maps_into_equalizer_torsion():
    from relhom.freelie import l_n_map
    from relhom.zgmod import n_torsion
    v4 = presented("v4")
    g = gamma_equalizer(v4, 2)
    ln = l_n_map(v4, 2)
    eq = equalizer_limit(v4, 2)
    two = n_torsion(eq.subgroup.ambient, 2)
    for v in g.subgroup.lifts:
        image = ln(v)
        assert eq.subgroup.contains(image)
        assert two.contains(image)
