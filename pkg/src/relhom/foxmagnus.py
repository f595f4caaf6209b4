"""Fox derivatives, the relation module and the Magnus embedding.

The free ZG-module ``ZG (x)_{ZF} f`` is modelled by ``regular_free_module(G, d)``
with Z-basis ``h (1 (x) (s - 1))`` at index ``s*m + h``.  Under this
identification the Magnus embedding sends the class of ``r`` in ``R/[R,R]``
to its vector of Fox derivatives ``(dr/ds)_s`` projected to ZG.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Union

from .errors import InvariantViolation
from .intlattice import IntMat, LatticeSolver, kernel_basis, same_lattice
from .presentations import (CayleyGroup, Presentation, QuotientMap,
                            SchreierData, Word, coset_enumerate, evaluate,
                            rewrite_in_R, schreier_transversal)
from .zgmod import ZGMap, ZGModule, regular_free_module, trivial_module

__all__ = [
    "GroupRingElement", "PresentedGroup", "RelationSequence", "realize",
    "fox_derivative", "relation_module", "magnus_matrix", "relation_sequence",
    "verify_relation_sequence", "SequenceReport",
]


@dataclass(frozen=True)
class GroupRingElement:
    """An element of ZG as its coefficient vector over the element labels."""

    coeffs: tuple[int, ...]

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def support(self) -> dict[int, int]:
        return {g: c for g, c in enumerate(self.coeffs) if c}


def _fox_all(w: Word, q: QuotientMap, g: CayleyGroup) -> list[list[int]]:
    # one left-to-right pass: d(uv) = du + pi(u) dv
    m = g.order
    d = len(q.images)
    out = [[0] * m for _ in range(d)]
    prefix = g.identity
    t = g.table
    for s, e in w.letters:
        img = q.images[s]
        if e > 0:
            for _ in range(e):
                out[s][prefix] += 1
                prefix = int(t[prefix, img])
        else:
            inv = g.inverse[img]
            for _ in range(-e):
                prefix = int(t[prefix, inv])
                out[s][prefix] -= 1
    return out


def fox_derivative(w: Word, s: int, q: QuotientMap, g: CayleyGroup) -> GroupRingElement:
    """``dw/ds`` projected to ZG."""
    if not 0 <= s < len(q.images):
        raise ValueError(f"generator index {s} out of range")
    return GroupRingElement(tuple(_fox_all(w, q, g)[s]))


def relation_module(sd: SchreierData, g: Optional[CayleyGroup] = None,
                    q: Optional[QuotientMap] = None) -> ZGModule:
    """``R/[R,R]`` in the Schreier basis with the conjugation action.

    Column ``i`` of ``action[h]`` is the rewrite of ``t_h b_i t_h^-1``.
    The action is also recomputed with the generator letter itself as the
    lift of each generator image; disagreement is a hard failure.
    """
    g = sd.group if g is None else g
    q = sd.quotient if q is None else q
    r = sd.rank
    basis = sd.basis_words()
    action = []
    for h in g.elements():
        cols = []
        for b in basis:
            vec, end = sd.trace(h, b)
            if end != h:
                raise InvariantViolation("Schreier word does not lie in R")
            cols.append({i: x for i, x in enumerate(vec) if x})
        action.append(IntMat.from_sparse_columns(cols, r))
    for s, img in enumerate(q.images):
        lift = Word.generator(s)
        cols = [rewrite_in_R(sd, lift * b * lift.inverse()) for b in basis]
        if IntMat.from_columns(cols, r) != action[img]:
            raise InvariantViolation(f"relation-module action depends on the lift of generator {s}")
    return ZGModule(g, r, action, check=True, label="R_ab")


def magnus_matrix(sd: SchreierData, g: Optional[CayleyGroup] = None,
                  q: Optional[QuotientMap] = None,
                  relmod: Optional[ZGModule] = None) -> ZGMap:
    """The Magnus embedding ``R_ab -> ZG^d`` as an injective ZG-map."""
    g = sd.group if g is None else g
    q = sd.quotient if q is None else q
    relmod = relation_module(sd, g, q) if relmod is None else relmod
    m = g.order
    d = len(q.images)
    cols = []
    for b in sd.basis_words():
        fox = _fox_all(b, q, g)
        cols.append({s * m + h: c for s in range(d) for h, c in enumerate(fox[s]) if c})
    mat = IntMat.from_sparse_columns(cols, m * d)
    mu = ZGMap(relmod, regular_free_module(g, d), mat, check=True)
    if kernel_basis(mat).cols:
        raise InvariantViolation("Magnus matrix is not injective", witness=kernel_basis(mat))
    return mu


class PresentedGroup:
    """A presentation together with its realisation ``pi: F -> G``.

    Built either by coset enumeration (:func:`realize`) or on an existing
    Cayley table with explicit generator images (:meth:`on_group`), which is
    how several presentations of one group share a table.
    """

    def __init__(self, presentation: Presentation, group: CayleyGroup, quotient: QuotientMap):
        self.presentation = presentation
        self.group = group
        self.quotient = quotient
        quotient.check(group, presentation)

    @classmethod
    def on_group(cls, presentation: Presentation, group: CayleyGroup,
                 images: Sequence[Union[int, Word]], base: Optional["PresentedGroup"] = None,
                 verify_order: bool = True) -> "PresentedGroup":
        """Realise ``presentation`` on ``group``.

        ``images`` gives each generator's image as an element index or as a
        word in ``base``'s generators.  With ``verify_order`` the presentation
        is enumerated independently and its order compared, which certifies
        that the images define an isomorphism.
        """
        elems = []
        for x in images:
            if isinstance(x, Word):
                if base is None:
                    raise ValueError("word images need a base presented group")
                elems.append(evaluate(base.quotient, base.group, x))
            else:
                elems.append(int(x))
        pg = cls(presentation, group, QuotientMap(tuple(elems)))
        if verify_order:
            other, _ = coset_enumerate(presentation)
            if other.order != group.order:
                raise InvariantViolation(
                    f"presentation has order {other.order}, group has order {group.order}")
        return pg

    @property
    def d(self) -> int:
        return self.presentation.num_generators

    @property
    def m(self) -> int:
        return self.group.order

    @cached_property
    def schreier(self) -> SchreierData:
        sd = schreier_transversal(self.group, self.quotient)
        sd.check()
        return sd

    @cached_property
    def relmod(self) -> ZGModule:
        return relation_module(self.schreier)

    @cached_property
    def magnus(self) -> ZGMap:
        return magnus_matrix(self.schreier, relmod=self.relmod)

    @cached_property
    def free_module(self) -> ZGModule:
        return regular_free_module(self.group, self.d)

    def evaluate(self, w: Word) -> int:
        return evaluate(self.quotient, self.group, w)

    def rewrite(self, w: Word) -> list[int]:
        return rewrite_in_R(self.schreier, w)

    def __repr__(self) -> str:
        return (f"PresentedGroup<d={self.d}, |G|={self.m}, "
                f"rels={[r.format(self.presentation.names) for r in self.presentation.relators]}>")


@lru_cache(maxsize=64)
def _realize_cached(p: Presentation, limit: Optional[int]) -> PresentedGroup:
    g, q = coset_enumerate(p, limit)
    g.check()
    return PresentedGroup(p, g, q)


def realize(p: Union[Presentation, PresentedGroup], limit: Optional[int] = None) -> PresentedGroup:
    """Enumerate ``p`` (memoised); passes :class:`PresentedGroup` through."""
    if isinstance(p, PresentedGroup):
        return p
    return _realize_cached(p, limit)


@dataclass
class RelationSequence:
    """``0 -> R_ab --mu--> ZG^d --sigma--> ZG --epsilon--> Z -> 0``."""

    relmod: ZGModule
    mu: ZGMap
    sigma: ZGMap
    epsilon: ZGMap

    def check(self) -> None:
        if not (self.sigma.matrix @ self.mu.matrix).is_zero():
            raise InvariantViolation("sigma o mu != 0")
        if not (self.epsilon.matrix @ self.sigma.matrix).is_zero():
            raise InvariantViolation("epsilon o sigma != 0")


def relation_sequence(pg: PresentedGroup) -> RelationSequence:
    g = pg.group
    m = g.order
    d = pg.d
    ZG = regular_free_module(g, 1)
    cols = []
    for s in range(d):
        img = pg.quotient.images[s]
        for h in range(m):
            col: dict = {}
            hs = g.mul(h, img)
            col[hs] = col.get(hs, 0) + 1
            col[h] = col.get(h, 0) - 1
            cols.append({k: v for k, v in col.items() if v})
    sigma = ZGMap(pg.free_module, ZG, IntMat.from_sparse_columns(cols, m), check=True)
    eps = ZGMap(ZG, trivial_module(g, 1), IntMat(1, m, {0: {h: 1 for h in range(m)}}), check=True)
    seq = RelationSequence(pg.relmod, pg.magnus, sigma, eps)
    seq.check()
    return seq


@dataclass
class SequenceReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def verify_relation_sequence(p: Union[Presentation, PresentedGroup]) -> SequenceReport:
    """Lattice-level exactness of the relation sequence at every spot."""
    pg = realize(p)
    seq = relation_sequence(pg)
    rep = SequenceReport()
    mu, sigma, eps = seq.mu.matrix, seq.sigma.matrix, seq.epsilon.matrix

    kmu = kernel_basis(mu)
    rep.checks.append(("mu injective", kmu.cols == 0))
    if kmu.cols:
        rep.witnesses["mu injective"] = kmu.columns()

    ksig = kernel_basis(sigma)
    ok = same_lattice(ksig, mu)
    rep.checks.append(("ker sigma = im mu", ok))
    if not ok:
        rep.witnesses["ker sigma = im mu"] = (ksig.columns(), mu.columns())

    keps = kernel_basis(eps)
    ok = same_lattice(keps, sigma)
    rep.checks.append(("ker epsilon = im sigma", ok))
    if not ok:
        rep.witnesses["ker epsilon = im sigma"] = (keps.columns(), sigma.columns())

    ok = LatticeSolver(eps).contains([1])
    rep.checks.append(("epsilon surjective", ok))
    return rep
