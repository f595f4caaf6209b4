"""Finite groups as Cayley tables, obtained by Todd-Coxeter enumeration.

Scanning strategy (HLT): cosets are processed in order of definition; each
live coset has every relator scanned and filled from it, after which its
row is completed by defining any missing entries, generator columns in the
order ``s0, s0^-1, s1, s1^-1, ...``.  Coincidences are merged with a
union-find that always keeps the smaller label.  The closed table is
renumbered by breadth-first search in the same column order, so element
labels are a deterministic function of the presentation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ..errors import CosetLimitExceeded, InvariantViolation
from .parse import Presentation
from .words import Word

__all__ = ["CayleyGroup", "QuotientMap", "coset_enumerate", "evaluate",
           "DEFAULT_COSET_LIMIT", "coset_limit"]

DEFAULT_COSET_LIMIT = 20000


def coset_limit() -> int:
    """The enumeration cap, overridable through ``RELHOM_COSET_LIMIT``."""
    env = os.environ.get("RELHOM_COSET_LIMIT")
    return int(env) if env else DEFAULT_COSET_LIMIT


@dataclass(frozen=True, eq=False)
class CayleyGroup:
    """A finite group as a multiplication table on ``0..order-1``.

    ``generators`` is a generating set of element indices; coinvariants are
    computed with respect to it.
    """

    order: int
    table: np.ndarray
    identity: int
    inverse: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "inverse", tuple(int(x) for x in self.inverse))
        if not self.generators:
            object.__setattr__(self, "generators",
                               tuple(g for g in range(self.order) if g != self.identity))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))

    @classmethod
    def from_table(cls, table, generators: Sequence[int] = ()) -> "CayleyGroup":
        t = np.asarray(table, dtype=np.int64)
        m = t.shape[0]
        ident = next(e for e in range(m) if all(t[e, x] == x for x in range(m)))
        inv = [int(np.nonzero(t[a] == ident)[0][0]) for a in range(m)]
        return cls(m, t, ident, tuple(inv), tuple(generators))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def same_table(self, other: "CayleyGroup") -> bool:
        return self is other or (self.order == other.order
                                 and np.array_equal(self.table, other.table))

    def check(self, sample_seed: int = 0) -> None:
        """Verify the group law; raises :class:`InvariantViolation`."""
        m = self.order
        t = self.table
        ar = np.arange(m)
        if t.shape != (m, m):
            raise InvariantViolation("table has the wrong shape")
        if not (np.array_equal(t[self.identity], ar) and np.array_equal(t[:, self.identity], ar)):
            raise InvariantViolation("identity row/column is not fixed")
        for k in range(m):
            if len(set(t[k].tolist())) != m or len(set(t[:, k].tolist())) != m:
                raise InvariantViolation(f"row or column {k} is not a permutation")
        for a in range(m):
            if t[a, self.inverse[a]] != self.identity:
                raise InvariantViolation(f"bad inverse of {a}")
        if m <= 64:
            lhs = t[t[:, :, None], ar[None, None, :]]  # (ab)c
            rhs = t[ar[:, None, None], t[None, :, :]]  # a(bc)
            if not np.array_equal(lhs, rhs):
                raise InvariantViolation("table is not associative")
        else:
            rng = np.random.default_rng(sample_seed)
            n = 10 * m * m
            a, b, c = rng.integers(0, m, size=(3, n))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise InvariantViolation("table is not associative (sampled)")
        closure = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = int(t[x, g])
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(closure) != m:
            raise InvariantViolation("generators do not generate the group")


@dataclass(frozen=True)
class QuotientMap:
    """Images of the free generators in a :class:`CayleyGroup`."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))

    def check(self, group: CayleyGroup, presentation: Optional[Presentation] = None) -> None:
        seen = {group.identity}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.images:
                    for y in (group.mul(x, g), group.mul(x, group.inverse[g])):
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
            frontier = nxt
        if len(seen) != group.order:
            raise InvariantViolation("generator images do not generate the group")
        if presentation is not None:
            for r in presentation.relators:
                if evaluate(self, group, r) != group.identity:
                    raise InvariantViolation(f"relator {r} does not evaluate to the identity")


def evaluate(q: QuotientMap, g: CayleyGroup, w: Word) -> int:
    """The element ``pi(w)``."""
    x = g.identity
    t = g.table
    for s, e in w.letters:
        y = q.images[s] if e > 0 else g.inverse[q.images[s]]
        for _ in range(abs(e)):
            x = int(t[x, y])
    return x


def coset_enumerate(p: Presentation, limit: Optional[int] = None) -> tuple[CayleyGroup, QuotientMap]:
    """Enumerate cosets of the trivial subgroup; returns the regular action.

    Raises :class:`CosetLimitExceeded` once more than ``limit`` cosets have
    been defined.
    """
    limit = coset_limit() if limit is None else limit
    d = p.num_generators
    ncol = 2 * d
    rels = []
    for r in p.relators:
        rels.append([2 * (abs(x) - 1) + (0 if x > 0 else 1) for x in r.signed()])

    table: list[list[int]] = [[-1] * ncol]
    parent: list[int] = [0]

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    queue: list[int] = []

    def merge(a: int, b: int) -> None:
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a: int, b: int) -> None:
        queue.clear()
        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncol):
                h = row[x]
                if h < 0:
                    continue
                xi = x ^ 1
                if table[h][xi] == g:
                    table[h][xi] = -1
                e1, f1 = rep(g), rep(h)
                if table[e1][x] >= 0:
                    merge(f1, table[e1][x])
                elif table[f1][xi] >= 0:
                    merge(e1, table[f1][xi])
                else:
                    table[e1][x] = f1
                    table[f1][xi] = e1

    def define(c: int, x: int) -> int:
        if len(table) >= limit:
            raise CosetLimitExceeded(
                f"coset enumeration exceeded {limit} cosets (group too large or infinite)")
        new = len(table)
        table.append([-1] * ncol)
        parent.append(new)
        table[c][x] = new
        table[new][x ^ 1] = c
        return new

    def scan_and_fill(c: int, word: list[int]) -> None:
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] >= 0:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] >= 0:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, w)
            if parent[c] == c:
                for x in range(ncol):
                    if parent[c] != c:
                        break
                    if table[c][x] < 0:
                        define(c, x)
        c += 1

    # breadth-first renumbering of the live cosets
    order = [0]
    label = {0: 0}
    for k in order:
        for x in range(ncol):
            y = rep(table[k][x])
            if y not in label:
                label[y] = len(order)
                order.append(y)
    m = len(order)
    right = [[label[rep(table[k][x])] for x in range(ncol)] for k in order]

    # element k <-> the word reaching coset k; product a*b = trace b's word from a
    tree: list[tuple[int, int]] = [(-1, -1)] * m
    for k in range(m):
        for x in range(ncol):
            y = right[k][x]
            if y != 0 and tree[y] == (-1, -1):
                tree[y] = (k, x)
    bfs = sorted(range(m), key=lambda k: _depth(tree, k))
    mult = np.zeros((m, m), dtype=np.int64)
    for a in range(m):
        row = mult[a]
        row[0] = a
        for b in bfs:
            if b == 0:
                continue
            par, x = tree[b]
            row[b] = right[int(row[par])][x]
    images = tuple(right[0][2 * s] for s in range(d))
    inverse = [0] * m
    for a in range(m):
        inverse[a] = int(np.nonzero(mult[a] == 0)[0][0])
    gens = tuple(dict.fromkeys(x for x in images if x != 0)) or (0,)
    group = CayleyGroup(m, mult, 0, tuple(inverse), gens)
    q = QuotientMap(images)
    return group, q


def _depth(tree, k):
    n = 0
    while k != 0:
        k = tree[k][0]
        n += 1
    return n
