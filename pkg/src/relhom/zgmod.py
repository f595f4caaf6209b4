"""Finite-rank ZG-modules given by integer action matrices.

Conventions:

* left actions, ``action[g] @ action[h] == action[g*h]``;
* tensor products carry the diagonal action, basis index of ``e_i (x) f_j``
  is ``i * rank(N) + j`` (left factor major), matching :meth:`IntMat.kron`;
* ``regular_free_module(G, k)`` has basis ``g * e_i`` at index ``i*m + g``;
* coinvariant groups are presented by relation rows ``(action[g] - I) e_i``
  for ``g`` in the group's generating set, i.e. as ``Z^rank / rowspan``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .errors import InvariantViolation
from .intlattice import (AbInvariants, IntMat, LatticeSolver,
                         QuotientCoordinates, kernel_basis)
from .presentations import CayleyGroup

__all__ = [
    "ZGModule", "ZGMap", "PresentedAbGroup", "InducedMap", "Subquotient",
    "trivial_module", "regular_free_module", "tensor", "tensor_power", "tensor_map",
    "coinvariants", "induced_coinvariant_map", "kernel_of_induced", "n_torsion",
    "untwist_free_coinvariants", "direct_sum",
]


class ZGModule:
    """A free abelian group of finite rank with a left G-action."""

    def __init__(self, group: CayleyGroup, rank: int, action: Sequence[IntMat],
                 check: bool = True, label: str = ""):
        if len(action) != group.order:
            raise ValueError("need one action matrix per group element")
        for a in action:
            if a.shape != (rank, rank):
                raise ValueError("action matrix has the wrong shape")
        self.group = group
        self.rank = rank
        self.action = tuple(action)
        self.label = label
        if check:
            self.check()

    @classmethod
    def from_generators(cls, group: CayleyGroup, rank: int, gen_elements: Sequence[int],
                        gen_matrices: Sequence[IntMat], label: str = "") -> "ZGModule":
        """Extend an action given on generating elements to the whole group.

        Raises :class:`InvariantViolation` when the matrices do not define a
        G-action (a relation of the group acts nontrivially).
        """
        action: list[Optional[IntMat]] = [None] * group.order
        action[group.identity] = IntMat.identity(rank)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, a in zip(gen_elements, gen_matrices):
                    y = group.mul(g, x)
                    mat = a @ action[x]
                    if action[y] is None:
                        action[y] = mat
                        nxt.append(y)
                    elif action[y] != mat:
                        raise InvariantViolation(
                            f"matrices do not define a G-action (element {y})")
            frontier = nxt
        if any(a is None for a in action):
            raise InvariantViolation("given elements do not generate the group")
        return cls(group, rank, action, check=True, label=label)

    def check(self) -> None:
        """Verify identity, homomorphism and invertibility conditions."""
        G = self.group
        n = self.rank
        eye = IntMat.identity(n)
        if self.action[G.identity] != eye:
            raise InvariantViolation("identity does not act as I")
        for g in G.elements():
            if self.action[g] @ self.action[G.inverse[g]] != eye:
                raise InvariantViolation(f"action of {g} is not invertible over Z")
        m = G.order
        if m * n * n <= 10**6:
            pairs = [(g, h) for g in range(m) for h in range(m)]
        else:
            pairs = [(g, h) for g in G.generators for h in range(m)]
        for g, h in pairs:
            if self.action[g] @ self.action[h] != self.action[G.mul(g, h)]:
                raise InvariantViolation(f"action(g)action(h) != action(gh) at {(g, h)}")

    def act(self, g: int, v: Sequence[int]) -> list[int]:
        return self.action[g].matvec(v)

    def __repr__(self) -> str:
        name = f" {self.label}" if self.label else ""
        return f"ZGModule{name}<rank={self.rank}, |G|={self.group.order}>"


class ZGMap:
    """A ZG-linear map, ``matrix`` of shape ``(target.rank, source.rank)``."""

    def __init__(self, source: ZGModule, target: ZGModule, matrix: IntMat, check: bool = True):
        if not source.group.same_table(target.group):
            raise ValueError("source and target live over different groups")
        if matrix.shape != (target.rank, source.rank):
            raise ValueError(f"matrix shape {matrix.shape} does not match "
                             f"{(target.rank, source.rank)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check:
            self.check()

    def check(self) -> None:
        f = self.matrix
        for g in self.source.group.elements():
            if f @ self.source.action[g] != self.target.action[g] @ f:
                raise InvariantViolation(f"map is not equivariant at element {g}")

    def compose(self, other: "ZGMap") -> "ZGMap":
        """``self o other``."""
        return ZGMap(other.source, self.target, self.matrix @ other.matrix, check=False)


def trivial_module(g: CayleyGroup, k: int = 1) -> ZGModule:
    eye = IntMat.identity(k)
    return ZGModule(g, k, [eye] * g.order, check=False, label="Z" if k == 1 else f"Z^{k}")


def regular_free_module(g: CayleyGroup, k: int = 1) -> ZGModule:
    """``ZG^k``; basis ``h e_i`` at index ``i*m + h``, acted on by left translation."""
    m = g.order
    action = []
    for x in range(m):
        perm = [i * m + g.mul(x, h) for i in range(k) for h in range(m)]
        action.append(IntMat.permutation(perm))
    return ZGModule(g, m * k, action, check=False, label=f"ZG^{k}")


def tensor(M: ZGModule, N: ZGModule) -> ZGModule:
    """Diagonal-action tensor product, left factor major."""
    if not M.group.same_table(N.group):
        raise ValueError("tensor factors live over different groups")
    action = [a.kron(b) for a, b in zip(M.action, N.action)]
    label = f"({M.label} (x) {N.label})" if M.label and N.label else ""
    return ZGModule(M.group, M.rank * N.rank, action, check=False, label=label)


def tensor_power(M: ZGModule, n: int) -> ZGModule:
    if n < 0:
        raise ValueError("tensor power must be nonnegative")
    out = trivial_module(M.group, 1)
    for _ in range(n):
        out = tensor(out, M)
    return out


def tensor_map(f: ZGMap, g: ZGMap) -> ZGMap:
    return ZGMap(tensor(f.source, g.source), tensor(f.target, g.target),
                 f.matrix.kron(g.matrix), check=False)


def identity_map(M: ZGModule) -> ZGMap:
    return ZGMap(M, M, IntMat.identity(M.rank), check=False)


# ---------------------------------------------------------------------------
# presented abelian groups


class PresentedAbGroup:
    """``Z^ambient_rank / rowspan(relations)`` with element-level access."""

    def __init__(self, ambient_rank: int, relations: Optional[IntMat] = None):
        if relations is None:
            relations = IntMat.zeros(0, ambient_rank)
        if relations.cols != ambient_rank:
            raise ValueError("relation rows must lie in Z^ambient_rank")
        self.ambient_rank = ambient_rank
        self.relations = relations

    @cached_property
    def coordinates(self) -> QuotientCoordinates:
        return QuotientCoordinates(self.relations)

    @property
    def invariants(self) -> AbInvariants:
        return self.coordinates.invariants

    def contains_relation(self, v: Sequence[int]) -> bool:
        """Whether ``v`` is zero in the quotient."""
        return self.coordinates.is_zero(v)

    def order_of(self, v: Sequence[int]) -> int:
        """Order of the class of ``v`` (0 when infinite)."""
        from math import lcm
        out = 1
        for x, m in zip(self.coordinates.coords(v), self.coordinates.moduli):
            if x == 0:
                continue
            if m == 0:
                return 0
            out = lcm(out, m // _gcd(x, m))
        return out

    def generators(self) -> list[tuple[list[int], int]]:
        return self.coordinates.generators()

    def torsion_generators(self) -> list[list[int]]:
        return [v for v, m in self.generators() if m]

    def __repr__(self) -> str:
        return f"PresentedAbGroup<ambient={self.ambient_rank}, {self.invariants}>"


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def direct_sum(*groups: PresentedAbGroup) -> PresentedAbGroup:
    rel = groups[0].relations
    for g in groups[1:]:
        rel = rel.block_diag(g.relations)
    return PresentedAbGroup(sum(g.ambient_rank for g in groups), rel)


@dataclass
class InducedMap:
    """An additive map of presented groups given on ambient lattices."""

    source: PresentedAbGroup
    target: PresentedAbGroup
    matrix: IntMat  # (target.ambient_rank, source.ambient_rank)

    def __post_init__(self):
        if self.matrix.shape != (self.target.ambient_rank, self.source.ambient_rank):
            raise ValueError("induced map matrix has the wrong shape")

    def check_well_defined(self) -> None:
        tgt = self.target
        for i, r in self.source.relations.row_items():
            v = [0] * self.source.ambient_rank
            for j, x in r.items():
                v[j] = x
            if not tgt.contains_relation(self.matrix.matvec(v)):
                raise InvariantViolation("induced map does not respect relations", witness=v)

    def __call__(self, v: Sequence[int]) -> list[int]:
        return self.matrix.matvec(v)

    def compose(self, other: "InducedMap") -> "InducedMap":
        """``self o other``."""
        return InducedMap(other.source, self.target, self.matrix @ other.matrix)

    def __sub__(self, other: "InducedMap") -> "InducedMap":
        return InducedMap(self.source, self.target, self.matrix - other.matrix)


@dataclass
class Subquotient:
    """A subgroup ``K / relations`` of a presented group.

    ``lattice`` holds a Z-basis of ``K`` as columns (ambient coordinates);
    ``lifts`` are ambient vectors generating the subgroup, one per
    invariant factor (cyclic decomposition).
    """

    ambient: PresentedAbGroup
    lattice: IntMat
    invariants: AbInvariants
    lifts: list[list[int]]
    orders: list[int]

    def contains(self, v: Sequence[int]) -> bool:
        """Membership of the class of ``v``."""
        return LatticeSolver(self.lattice).contains(v)

    def generator_matrix(self) -> IntMat:
        """Lifts plus relation basis, as columns: spans the full preimage."""
        rb = self.ambient.coordinates.relation_basis()
        cols = IntMat.from_columns(self.lifts, self.ambient.ambient_rank) if self.lifts else \
            IntMat.zeros(self.ambient.ambient_rank, 0)
        return cols.hstack(rb.T)


def subquotient_from_lattice(P: PresentedAbGroup, K: IntMat) -> Subquotient:
    """Subgroup of ``P`` whose preimage lattice has column basis ``K``.

    ``K`` must contain the relation lattice of ``P``.
    """
    rb = P.coordinates.relation_basis()
    if K.cols == 0:
        if rb.rows:
            raise InvariantViolation("relation lattice is not inside the subgroup lattice")
        return Subquotient(P, K, AbInvariants(), [], [])
    solver = LatticeSolver(K)
    rows = []
    for i in range(rb.rows):
        v = [0] * P.ambient_rank
        for j, x in rb.row(i).items():
            v[j] = x
        y = solver.solve(v)
        if y is None:
            raise InvariantViolation("relation lattice is not inside the subgroup lattice", witness=v)
        rows.append(y)
    Y = IntMat.from_dense(rows, K.cols) if rows else IntMat.zeros(0, K.cols)
    qc = QuotientCoordinates(Y)
    lifts, orders = [], []
    for y, m in qc.generators():
        lifts.append(K.matvec(y))
        orders.append(m)
    return Subquotient(P, K, qc.invariants, lifts, orders)


def coinvariants(M: ZGModule, generators: Optional[Sequence[int]] = None) -> PresentedAbGroup:
    """``H_0(G, M)`` presented by rows ``(action[g] - I) e_i`` for generating ``g``."""
    gens = M.group.generators if generators is None else generators
    eye = IntMat.identity(M.rank)
    blocks = [(M.action[g] - eye).T for g in gens]
    rel = blocks[0].vstack(*blocks[1:]) if blocks else IntMat.zeros(0, M.rank)
    return PresentedAbGroup(M.rank, rel)


def induced_coinvariant_map(f: ZGMap, source: Optional[PresentedAbGroup] = None,
                            target: Optional[PresentedAbGroup] = None,
                            check: bool = True) -> InducedMap:
    """``H_0(G, f)``; equivariance and well-definedness are asserted."""
    if check:
        f.check()
    src = coinvariants(f.source) if source is None else source
    tgt = coinvariants(f.target) if target is None else target
    out = InducedMap(src, tgt, f.matrix)
    if check:
        out.check_well_defined()
    return out


def preimage_lattice(f: InducedMap) -> IntMat:
    """Column basis of ``{x : f(x) = 0 in target}`` inside ``Z^source``."""
    tgt = f.target
    qc = tgt.coordinates
    P = qc.projection_matrix() @ f.matrix  # unreduced target coordinates
    moduli = qc.moduli
    tors = [i for i, m in enumerate(moduli) if m]
    n = f.source.ambient_rank
    big = P.hstack(IntMat(P.rows, len(tors), {i: {k: -moduli[i]} for k, i in enumerate(tors)}))
    kb = kernel_basis(big)
    return kb.select_rows(range(n))


def kernel_of_induced(f: InducedMap) -> Subquotient:
    """``ker f`` as a subgroup of ``f.source``, with ambient lifts of generators."""
    K = preimage_lattice(f)
    sub = subquotient_from_lattice(f.source, K)
    for v in sub.lifts:
        if not f.target.contains_relation(f.matrix.matvec(v)):
            raise InvariantViolation("kernel lift does not map to zero", witness=v)
    return sub


def n_torsion(P: PresentedAbGroup, n: int) -> Subquotient:
    """The subgroup ``{x : n x = 0}`` of ``P``."""
    if n < 1:
        raise ValueError("n must be positive")
    scale = InducedMap(P, P, IntMat.identity(P.ambient_rank).scale(n))
    return kernel_of_induced(scale)


def untwist_free_coinvariants(M: ZGModule, k: int) -> InducedMap:
    """Isomorphism ``H_0(G, M (x) ZG^k) -> Z^(rank(M) k)``.

    ``[v (x) g e_i] -> g^-1 v`` placed in slot ``i`` (slot-major output).
    Bijectivity is verified.
    """
    G = M.group
    m = G.order
    r = M.rank
    F = regular_free_module(G, k)
    source = coinvariants(tensor(M, F))
    cols = [None] * (r * m * k)
    for a in range(r):
        for i in range(k):
            for h in range(m):
                col = M.action[G.inverse[h]].column(a)
                cols[a * (m * k) + i * m + h] = {i * r + b: x for b, x in enumerate(col) if x}
    mat = IntMat.from_sparse_columns(cols, r * k)
    target = PresentedAbGroup(r * k)
    out = InducedMap(source, target, mat)
    out.check_well_defined()
    if not kernel_of_induced(out).invariants.is_zero():
        raise InvariantViolation("untwisting map is not injective")
    from .intlattice import cokernel_invariants
    if not cokernel_invariants(mat.T).is_zero():
        raise InvariantViolation("untwisting map is not surjective")
    return out
