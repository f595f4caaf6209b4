"""Schreier transversals and abelianised Reidemeister-Schreier rewriting.

For a transversal word ``t_g`` per element, the Schreier words
``t_g s t_{gs}^{-1}`` that are not freely trivial form a free basis of
``R``; their classes form a Z-basis of ``R/[R,R]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import InvariantViolation, NotInRelationSubgroup
from .cosets import CayleyGroup, QuotientMap, evaluate
from .words import Word, reduce

__all__ = ["SchreierData", "schreier_transversal", "rewrite_in_R"]


@dataclass(frozen=True, eq=False)
class SchreierData:
    transversal: tuple[Word, ...]
    basis_table: tuple[tuple[Optional[int], ...], ...]  # [element][generator]
    rank: int
    group: CayleyGroup
    quotient: QuotientMap

    @property
    def num_generators(self) -> int:
        return len(self.quotient.images)

    def basis_pairs(self) -> list[tuple[int, int]]:
        """``(element, generator)`` of each basis index, in index order."""
        out = [None] * self.rank
        for g, row in enumerate(self.basis_table):
            for s, idx in enumerate(row):
                if idx is not None:
                    out[idx] = (g, s)
        return out

    def basis_word(self, i: int) -> Word:
        g, s = self.basis_pairs()[i]
        gs = self.group.mul(g, self.quotient.images[s])
        return self.transversal[g] * Word.generator(s) * self.transversal[gs].inverse()

    def basis_words(self) -> list[Word]:
        return [self.basis_word(i) for i in range(self.rank)]

    def trace(self, start: int, w: Word) -> tuple[list[int], int]:
        """Rewrite ``w`` read from element ``start``; returns (vector, end element)."""
        vec = [0] * self.rank
        x = start
        t = self.group.table
        imgs = self.quotient.images
        inv = self.group.inverse
        bt = self.basis_table
        for s, e in w.letters:
            if e > 0:
                for _ in range(e):
                    idx = bt[x][s]
                    if idx is not None:
                        vec[idx] += 1
                    x = int(t[x, imgs[s]])
            else:
                si = inv[imgs[s]]
                for _ in range(-e):
                    x = int(t[x, si])
                    idx = bt[x][s]
                    if idx is not None:
                        vec[idx] -= 1
        return vec, x

    def check(self) -> None:
        m = self.group.order
        d = self.num_generators
        if self.rank != d * m - m + 1:
            raise InvariantViolation("Nielsen-Schreier rank formula fails")
        trivial = sum(1 for row in self.basis_table for idx in row if idx is None)
        if trivial != m - 1:
            raise InvariantViolation(f"{trivial} trivial Schreier pairs, expected {m - 1}")
        words = set(self.transversal)
        for g, w in enumerate(self.transversal):
            if evaluate(self.quotient, self.group, w) != g:
                raise InvariantViolation(f"transversal word for {g} evaluates wrongly")
            if w:
                s, e = w.letters[-1]
                prefix = Word(w.letters[:-1] + (((s, e - (1 if e > 0 else -1)),) if abs(e) > 1 else ()))
                if prefix not in words:
                    raise InvariantViolation("transversal is not prefix-closed")
        if self.transversal[self.group.identity]:
            raise InvariantViolation("transversal of the identity must be empty")


def schreier_transversal(g: CayleyGroup, q: QuotientMap) -> SchreierData:
    """Breadth-first transversal, letters tried in order s0, s0^-1, s1, ..."""
    m = g.order
    d = len(q.images)
    trans: list[Optional[Word]] = [None] * m
    trans[g.identity] = Word()
    edges: set[tuple[int, int]] = set()  # (element, generator) pairs freely trivial
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in range(d):
                for e in (1, -1):
                    y = g.mul(x, q.images[s]) if e > 0 else g.mul(x, g.inverse[q.images[s]])
                    if trans[y] is None:
                        trans[y] = reduce(trans[x].letters + ((s, e),))
                        edges.add((x, s) if e > 0 else (y, s))
                        nxt.append(y)
        frontier = nxt
    if any(t is None for t in trans):
        raise InvariantViolation("generator images do not generate the group")
    table = []
    idx = 0
    for x in range(m):
        row = []
        for s in range(d):
            if (x, s) in edges:
                row.append(None)
            else:
                row.append(idx)
                idx += 1
        table.append(tuple(row))
    return SchreierData(tuple(trans), tuple(table), idx, g, q)


def rewrite_in_R(sd: SchreierData, w: Word) -> list[int]:
    """Coordinates of ``w [R,R]`` in the Schreier basis; ``w`` must lie in R."""
    vec, end = sd.trace(sd.group.identity, w)
    if end != sd.group.identity:
        raise NotInRelationSubgroup(f"word {w} does not evaluate to the identity")
    return vec
