"""Morphisms and coproducts of presentations of one finite group.

All presentations involved share a single :class:`CayleyGroup`; a morphism
``F -> F'`` over ``G`` is given by the images of the free generators.  The
coproduct ``P * P'`` is the free product with the combined map onto ``G``.
Its relator list (the shifted union) only documents the object: every
computation goes through the Cayley table and the generator images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvariantViolation
from .foxmagnus import PresentedGroup, _fox_all, realize
from .homology import PresLike, _budget, _h1_free_matrix, h_even
from .freelie import free_lie_submodule
from .intlattice import (AbInvariants, IntMat, LatticeSolver, kernel_basis,
                         same_lattice)
from .presentations import Presentation, QuotientMap, Word
from .zgmod import (InducedMap, PresentedAbGroup, Subquotient, ZGMap, ZGModule,
                    coinvariants, identity_map, induced_coinvariant_map,
                    kernel_of_induced, tensor, tensor_map, tensor_power,
                    trivial_module)

__all__ = [
    "PresMorphism", "find_morphism", "identity_morphism", "coproduct", "Coproduct",
    "induced_relmod_map", "induced_free_map", "CheckReport", "splitting_check",
    "coproduct_injectivity_check", "error_term_check", "EqualizerResult", "equalizer_limit",
    "gamma_equalizer", "lie_induced_map",
]


@dataclass(frozen=True, eq=False)
class PresMorphism:
    """``phi: F -> F'`` with ``pi' o phi = pi``."""

    source: PresentedGroup
    target: PresentedGroup
    images: tuple[Word, ...]

    def __post_init__(self):
        if not self.source.group.same_table(self.target.group):
            raise InvariantViolation("morphism between presentations of different Cayley tables")
        if len(self.images) != self.source.d:
            raise ValueError("need one image word per source generator")
        for s, w in enumerate(self.images):
            if self.target.evaluate(w) != self.source.quotient.images[s]:
                raise InvariantViolation(f"image of generator {s} lies over the wrong element")

    def apply(self, w: Word) -> Word:
        return w.substitute(self.images)

    def compose(self, other: "PresMorphism") -> "PresMorphism":
        """``self o other``."""
        return PresMorphism(other.source, self.target, tuple(self.apply(w) for w in other.images))


def identity_morphism(P: PresentedGroup) -> PresMorphism:
    return PresMorphism(P, P, tuple(Word.generator(s) for s in range(P.d)))


def find_morphism(P: PresLike, Q: PresLike) -> PresMorphism:
    """A morphism ``P -> Q``: each generator goes to the shortest Q-word over
    its element (breadth-first, letters ordered ``s0, s0^-1, s1, ...``)."""
    P, Q = realize(P), realize(Q)
    if P is Q:
        return identity_morphism(P)
    if not P.group.same_table(Q.group):
        raise InvariantViolation("presentations are not identified on one Cayley table")
    trans = Q.schreier.transversal
    return PresMorphism(P, Q, tuple(trans[g] for g in P.quotient.images))


@dataclass(frozen=True, eq=False)
class Coproduct:
    obj: PresentedGroup
    iota1: PresMorphism
    iota2: PresMorphism

    def copair(self, f: PresMorphism, g: PresMorphism) -> PresMorphism:
        """The unique morphism ``(f, g)`` out of the coproduct."""
        if f.target is not g.target:
            raise ValueError("copairing needs a common target")
        return PresMorphism(self.obj, f.target, f.images + g.images)


def coproduct(P: PresLike, Q: PresLike) -> Coproduct:
    P, Q = realize(P), realize(Q)
    if not P.group.same_table(Q.group):
        raise InvariantViolation("coproduct needs presentations of one Cayley table")
    d = P.d
    names = list(P.presentation.names)
    for nm in Q.presentation.names:
        while nm in names:
            nm += "'"
        names.append(nm)
    rels = tuple(P.presentation.relators) + tuple(r.shift(d) for r in Q.presentation.relators)
    pres = Presentation(d + Q.d, rels, tuple(names))
    obj = PresentedGroup(pres, P.group, QuotientMap(P.quotient.images + Q.quotient.images))
    i1 = PresMorphism(P, obj, tuple(Word.generator(s) for s in range(d)))
    i2 = PresMorphism(Q, obj, tuple(Word.generator(d + s) for s in range(Q.d)))
    return Coproduct(obj, i1, i2)


def induced_relmod_map(phi: PresMorphism) -> ZGMap:
    """``R_ab -> R'_ab``: substitute into each Schreier basis word, rewrite in R'."""
    cols = [phi.target.rewrite(phi.apply(b)) for b in phi.source.schreier.basis_words()]
    mat = IntMat.from_columns(cols, phi.target.schreier.rank)
    return ZGMap(phi.source.relmod, phi.target.relmod, mat, check=True)


def induced_free_map(phi: PresMorphism) -> ZGMap:
    """``ZG (x) f -> ZG (x) f'``, ``h e_s -> h (d phi(s) / d t)_t``."""
    G = phi.source.group
    m = G.order
    dt = phi.target.d
    cols = [None] * (phi.source.d * m)
    for s, w in enumerate(phi.images):
        fox = _fox_all(w, phi.target.quotient, G)
        for h in range(m):
            col: dict = {}
            for t in range(dt):
                for k, c in enumerate(fox[t]):
                    if c:
                        idx = t * m + G.mul(h, k)
                        col[idx] = col.get(idx, 0) + c
            cols[s * m + h] = {i: c for i, c in col.items() if c}
    mat = IntMat.from_sparse_columns(cols, dt * m)
    return ZGMap(phi.source.free_module, phi.target.free_module, mat, check=True)


def _power_map(f: ZGMap, n: int, M: Optional[ZGModule] = None) -> ZGMap:
    out = identity_map(trivial_module(f.source.group, 1) if M is None else M)
    for _ in range(n):
        out = tensor_map(out, f)
    return out


@dataclass
class CheckReport:
    name: str
    checks: list[tuple[str, bool]] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def add(self, label: str, ok: bool, witness=None) -> None:
        self.checks.append((label, ok))
        if not ok and witness is not None:
            self.witnesses[label] = witness

    def raise_on_failure(self) -> None:
        bad = [k for k, ok in self.checks if not ok]
        if bad:
            raise InvariantViolation(f"{self.name} fails: {', '.join(bad)}",
                                     witness={k: self.witnesses.get(k) for k in bad})


def splitting_check(P: PresLike, Q: PresLike, strict: bool = True) -> CheckReport:
    """``lambda_* o iota_* = id`` for ``lambda = (id, phi)`` and symmetrically."""
    P, Q = realize(P), realize(Q)
    cp = coproduct(P, Q)
    rep = CheckReport("splitting check")
    lam = cp.copair(identity_morphism(P), find_morphism(Q, P))
    rho = cp.copair(find_morphism(P, Q), identity_morphism(Q))
    for label, iota, retr, base in (("iota1", cp.iota1, lam, P), ("iota2", cp.iota2, rho, Q)):
        i_star = induced_relmod_map(iota).matrix
        r_star = induced_relmod_map(retr).matrix
        comp = r_star @ i_star
        eye = IntMat.identity(base.schreier.rank)
        rep.add(f"retraction o {label} = id", comp == eye, (comp - eye).to_dense())
        ker = kernel_basis(i_star)
        rep.add(f"{label}_* injective", ker.cols == 0, ker.columns())
    mu1 = cp.obj.magnus.matrix @ induced_relmod_map(cp.iota1).matrix
    mu2 = induced_free_map(cp.iota1).matrix @ P.magnus.matrix
    rep.add("Magnus naturality", mu1 == mu2, (mu1 - mu2).to_dense())
    if strict:
        rep.raise_on_failure()
    return rep


def _h1_extension(iota: PresMorphism, base: PresentedGroup, offset: int, M: ZGModule,
                  n: int, N2: ZGModule, d2: int) -> IntMat:
    """Basis of ``H_1(F, N)`` pushed into ``N''^(d'')``: coefficients extended
    along ``iota_*^(n-1)``, slot ``s`` placed at ``offset + s``."""
    ext = _power_map(induced_relmod_map(iota), n - 1, M)  # N -> N''
    Kb = kernel_basis(_h1_free_matrix(base, ext.source))
    r = ext.source.rank
    cols = []
    for j in range(Kb.cols):
        v = Kb.column(j)
        out = [0] * (N2.rank * d2)
        for s in range(base.d):
            for a, x in enumerate(ext.matrix.matvec(v[s * r:(s + 1) * r])):
                out[(offset + s) * N2.rank + a] = x
        cols.append(out)
    return IntMat.from_columns(cols, N2.rank * d2) if cols else IntMat.zeros(N2.rank * d2, 0)


def error_term_check(P: PresLike, n: int = 1, M: Optional[ZGModule] = None,
                     budget: Optional[int] = None, strict: bool = True) -> CheckReport:
    """``iota_1 - iota_2`` is injective on ``H_1(F, N)``, so the error term of
    the five-term sequence contributes nothing to the doubling equalizer."""
    P = realize(P)
    M = trivial_module(P.group, 1) if M is None else M
    cp = coproduct(P, P)
    _budget(M.rank * cp.obj.schreier.rank ** max(n - 1, 1) * cp.obj.d, budget, "error term check")
    N2 = tensor(M, tensor_power(cp.obj.relmod, n - 1))
    a = _h1_extension(cp.iota1, P, 0, M, n, N2, cp.obj.d)
    b = _h1_extension(cp.iota2, P, P.d, M, n, N2, cp.obj.d)
    diff = a - b
    rep = CheckReport("error term")
    ker = kernel_basis(diff)
    rep.add("difference injective on H_1(F,N)", ker.cols == 0, ker.columns())
    if strict:
        rep.raise_on_failure()
    return rep


def coproduct_injectivity_check(P: PresLike, Q: PresLike, n: int = 1,
                                M: Optional[ZGModule] = None,
                                budget: Optional[int] = None,
                                strict: bool = True) -> CheckReport:
    """Injectivity of ``H_1(F,N) + H_1(F',N') -> H_1(F'',N'')`` and the split
    monomorphism ``H_0((ZG (x) f)^n) -> H_0((ZG (x) f'')^n)`` (tensored with M)."""
    P, Q = realize(P), realize(Q)
    M = trivial_module(P.group, 1) if M is None else M
    cp = coproduct(P, Q)
    PP = cp.obj
    _budget(M.rank * (PP.m * PP.d) ** n, budget, "coproduct check")
    rep = CheckReport("coproduct injectivity")

    N2 = tensor(M, tensor_power(PP.relmod, n - 1))
    blocks = [_h1_extension(iota, base, offset, M, n, N2, PP.d)
              for iota, base, offset in ((cp.iota1, P, 0), (cp.iota2, Q, P.d))]
    comb = blocks[0].hstack(blocks[1])
    beta2 = _h1_free_matrix(PP, N2)
    rep.add("image lies in H_1(F'',N'')", (beta2 @ comb).is_zero())
    ker = kernel_basis(comb)
    rep.add("H_1 sum map injective", ker.cols == 0, ker.columns())

    lam = cp.copair(identity_morphism(P), find_morphism(Q, P))
    fi = _power_map(induced_free_map(cp.iota1), n, M)
    fl = _power_map(induced_free_map(lam), n, M)
    up = induced_coinvariant_map(fi, check=False)
    down = induced_coinvariant_map(fl, source=up.target, target=up.source, check=False)
    up.check_well_defined()
    down.check_well_defined()
    comp = down.compose(up)
    diff = comp.matrix - IntMat.identity(comp.source.ambient_rank)
    ok = all(comp.source.contains_relation(diff.column(j)) for j in range(diff.cols))
    rep.add("free coinvariants split mono", ok)
    if strict:
        rep.raise_on_failure()
    return rep


@dataclass
class EqualizerResult:
    """Equalizer of the two maps out of ``H_0`` of the base object."""

    n: int
    invariants: AbInvariants
    subgroup: Subquotient
    difference: InducedMap
    matches: Optional[bool] = None  # equal to the Magnus kernel as subgroups

    def __str__(self) -> str:
        return str(self.invariants)


def _equalize(f1: InducedMap, f2: InducedMap) -> Subquotient:
    return kernel_of_induced(f1 - f2)


def equalizer_limit(P: PresLike, n: int, M: Optional[ZGModule] = None,
                    budget: Optional[int] = None, compare: bool = True) -> EqualizerResult:
    """Equalizer of ``iota_1, iota_2`` on ``H_0(M (x) R_ab^n)`` over ``P * P``.

    With ``compare`` the result is matched against ``h_even`` both in
    invariants and as a subgroup (same preimage lattice).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    P = realize(P)
    M = trivial_module(P.group, 1) if M is None else M
    cp = coproduct(P, P)
    _budget(M.rank * cp.obj.schreier.rank ** n, budget, "equalizer")
    maps = []
    src = None
    tgt = None
    for iota in (cp.iota1, cp.iota2):
        f = _power_map(induced_relmod_map(iota), n, M)
        F = induced_coinvariant_map(f, source=src, target=tgt, check=False)
        src, tgt = F.source, F.target
        maps.append(F)
    maps[0].check_well_defined()
    maps[1].check_well_defined()
    diff = maps[0] - maps[1]
    K = kernel_of_induced(diff)
    res = EqualizerResult(n, K.invariants, K, diff)
    if compare:
        H = h_even(P, n, M, budget)
        if H.kernel.lattice.cols or K.lattice.cols:
            res.matches = H.invariants == K.invariants and same_lattice(H.kernel.lattice, K.lattice)
        else:
            res.matches = True
    return res


def lie_induced_map(f: ZGMap, n: int, budget: Optional[int] = None) -> tuple[ZGMap, ZGModule, ZGModule]:
    """``L_n(f)``: solve ``E' X = f^(x)n E`` exactly."""
    Ls, inc_s = free_lie_submodule(f.source, n, budget)
    Lt, inc_t = free_lie_submodule(f.target, n, budget)
    fn = _power_map(f, n)
    FE = fn.matrix @ inc_s.matrix
    if Lt.rank == 0:
        mat = IntMat.zeros(0, Ls.rank)
    else:
        solver = LatticeSolver(inc_t.matrix)
        cols = []
        for j in range(FE.cols):
            y = solver.solve(FE.column(j))
            if y is None:
                raise InvariantViolation("tensor power does not preserve the Lie span",
                                         witness=FE.column(j))
            cols.append(y)
        mat = IntMat.from_columns(cols, Lt.rank) if cols else IntMat.zeros(Lt.rank, 0)
    return ZGMap(Ls, Lt, mat, check=True), Ls, Lt


def gamma_equalizer(P: PresLike, n: int, budget: Optional[int] = None,
                    strict: bool = True) -> EqualizerResult:
    """Equalizer of ``iota_1, iota_2`` on the gamma quotients over ``P * P``.

    Every generator is checked to be n-torsion (4-torsion when ``n = 2``).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    P = realize(P)
    cp = coproduct(P, P)
    _budget(cp.obj.schreier.rank ** n, budget, "gamma equalizer")
    maps = []
    src = tgt = None
    for iota in (cp.iota1, cp.iota2):
        g, _, _ = lie_induced_map(induced_relmod_map(iota), n, budget)
        F = induced_coinvariant_map(g, source=src, target=tgt, check=False)
        F.check_well_defined()
        src, tgt = F.source, F.target
        maps.append(F)
    K = _equalize(maps[0], maps[1])
    res = EqualizerResult(n, K.invariants, K, maps[0] - maps[1])
    e = 4 if n == 2 else n
    bad = [v for v in K.lifts if not K.ambient.contains_relation([e * x for x in v])]
    res.matches = not bad
    if bad and strict and n >= 2:
        raise InvariantViolation(f"gamma equalizer is not {e}-torsion", witness=bad)
    return res
