import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relhom.corpus import CORPUS, presentation
from relhom.errors import (CosetLimitExceeded, EmptyRelatorError, NotInRelationSubgroup,
                           PresentationSyntaxError, UnknownGeneratorError)
from relhom.presentations import (Word, coset_enumerate, evaluate, parse_presentation,
                                  parse_word, reduce, rewrite_in_R, schreier_transversal)

X, Y = Word.generator(0), Word.generator(1)


def test_word_reduction():
    assert (X * X.inverse()).is_identity()
    assert (X * X).letters == ((0, 2),)
    assert (X * Y * Y.inverse() * X).letters == ((0, 2),)


signed_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


@given(signed_words, signed_words, signed_words)
def test_free_group_axioms(a, b, c):
    u, v, w = Word.from_signed(a), Word.from_signed(b), Word.from_signed(c)
    assert (u * v) * w == u * (v * w)
    assert (u * u.inverse()).is_identity()
    assert Word.from_signed(u.signed()) == u
    raw = Word.from_signed(a + [-x for x in reversed(a)])
    assert raw.is_identity()


def test_parse_examples():
    p = parse_presentation("gens: x\nrels: x^2")
    assert p.num_generators == 1 and p.relators == (X ** 2,)
    p = parse_presentation("gens: x,y\nrels: x^2, y^2, (x y)^3")
    assert p.num_generators == 2 and len(p.relators) == 3
    with pytest.raises(EmptyRelatorError):
        parse_presentation("gens: x\nrels: x x^-1")


def test_parse_syntax_features():
    names = ["x", "y"]
    assert parse_word("[x, y]", names) == X.inverse() * Y.inverse() * X * Y
    assert parse_word("xy", names) == X * Y
    assert parse_word("(x y)^-2", names) == (X * Y).inverse() ** 2
    assert parse_word("1", names).is_identity()
    p = parse_presentation("# comment\ngens: x, y\nrels: x^2,\n  y^2\nrels: [x,y]\n")
    assert len(p.relators) == 3


def test_parse_errors_carry_position():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("gens: x, y\nrels: x^2, (x y\n")
    assert exc.value.line == 2 and exc.value.column is not None
    with pytest.raises(UnknownGeneratorError) as exc:
        parse_presentation("gens: x\nrels: x^2, z")
    assert exc.value.line == 2


def test_enumeration_orders():
    expected = {"trivial": 1, "c2": 2, "c3": 3, "c4": 4, "v4": 4, "s3": 6,
                "c2_2gen": 2, "c3_2gen": 3, "v4_3gen": 4, "s3_3gen": 6}
    for name, order in expected.items():
        g, q = coset_enumerate(presentation(name))
        g.check()
        q.check(g, presentation(name))
        assert g.order == order, name


def test_enumeration_larger_groups():
    d8 = parse_presentation("gens: a, b\nrels: a^8, b^2, (a b)^2")
    assert coset_enumerate(d8)[0].order == 16
    heis = parse_presentation("gens: x, y\nrels: x^3, y^3, [x,y]^3, [[x,y],x], [[x,y],y]")
    assert coset_enumerate(heis)[0].order == 27
    a5 = parse_presentation("gens: a, b\nrels: a^2, b^3, (a b)^5")
    assert coset_enumerate(a5)[0].order == 60


def test_enumeration_limit():
    with pytest.raises(CosetLimitExceeded):
        coset_enumerate(parse_presentation("gens: x, y\nrels: [x, y]"), limit=200)


def test_enumeration_limit_env(monkeypatch):
    monkeypatch.setenv("RELHOM_COSET_LIMIT", "50")
    with pytest.raises(CosetLimitExceeded):
        coset_enumerate(parse_presentation("gens: a, b\nrels: a^2, b^3, (a b)^5"))


def test_enumeration_deterministic():
    for name in CORPUS:
        g1, q1 = coset_enumerate(presentation(name))
        g2, q2 = coset_enumerate(presentation(name))
        assert np.array_equal(g1.table, g2.table) and q1 == q2


def test_evaluate():
    g, q = coset_enumerate(presentation("c2"))
    assert evaluate(q, g, X ** 3) != g.identity
    for name in CORPUS:
        p = presentation(name)
        g, q = coset_enumerate(p)
        assert all(evaluate(q, g, r) == g.identity for r in p.relators)


@given(signed_words)
def test_evaluate_ignores_free_reduction(letters):
    g, q = coset_enumerate(presentation("s3"))
    raw = [(abs(x) - 1, 1 if x > 0 else -1) for x in letters if abs(x) <= 2]
    # evaluate syllable by syllable without reducing
    x = g.identity
    for s, e in raw:
        x = g.mul(x, q.images[s] if e > 0 else g.inverse[q.images[s]])
    assert evaluate(q, g, reduce(raw)) == x


def test_schreier_examples():
    g, q = coset_enumerate(presentation("c2"))
    sd = schreier_transversal(g, q)
    assert sd.transversal == (Word(), X)
    assert sd.rank == 1
    assert sum(1 for row in sd.basis_table for i in row if i is not None) == 1
    assert sd.basis_pairs() == [(1, 0)]
    g, q = coset_enumerate(presentation("v4"))
    assert schreier_transversal(g, q).rank == 5
    g, q = coset_enumerate(presentation("trivial"))
    sd = schreier_transversal(g, q)
    assert sd.rank == 1 and sd.transversal == (Word(),)


def test_nielsen_schreier_rank_everywhere():
    for name in CORPUS:
        p = presentation(name)
        g, q = coset_enumerate(p)
        sd = schreier_transversal(g, q)
        sd.check()
        assert sd.rank == p.num_generators * g.order - g.order + 1


def test_rewrite_examples():
    g, q = coset_enumerate(presentation("c2"))
    sd = schreier_transversal(g, q)
    assert rewrite_in_R(sd, X ** 2) == [1]
    assert rewrite_in_R(sd, X ** 4) == [2]
    assert rewrite_in_R(sd, Word()) == [0]
    with pytest.raises(NotInRelationSubgroup):
        rewrite_in_R(sd, X)


@given(signed_words, signed_words)
@settings(max_examples=60, deadline=None)
def test_rewrite_is_additive(a, b):
    p = presentation("s3")
    g, q = coset_enumerate(p)
    sd = schreier_transversal(g, q)
    u = Word.from_signed([x for x in a if abs(x) <= 2])
    v = Word.from_signed([x for x in b if abs(x) <= 2])
    # conjugates of relators lie in R; rewriting is a homomorphism on R
    r1 = u * p.relators[2] * u.inverse()
    r2 = v * p.relators[0] * v.inverse()
    lhs = rewrite_in_R(sd, r1 * r2)
    rhs = [x + y for x, y in zip(rewrite_in_R(sd, r1), rewrite_in_R(sd, r2))]
    assert lhs == rhs
    assert rewrite_in_R(sd, r1 * r2) == rewrite_in_R(sd, r2 * r1)
