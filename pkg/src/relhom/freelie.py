"""Free Lie rings on ZG-lattices and the quotients ``gamma_n R / [gamma_n R, F]``.

``L_n(A)`` sits in ``A^(x)n`` with the Lyndon basis: every Lyndon word is
bracketed by its standard factorisation and expanded in the tensor ring.
The lower-central quotient is computed as ``H_0(G, L_n R_ab)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .errors import InvariantViolation
from .foxmagnus import PresentedGroup, realize
from .homology import PresLike, _budget, magnus_power
from .intlattice import AbInvariants, IntMat, LatticeSolver
from .zgmod import (InducedMap, PresentedAbGroup, Subquotient, ZGMap, ZGModule,
                    coinvariants, induced_coinvariant_map, kernel_of_induced,
                    n_torsion, tensor_power)

__all__ = [
    "lyndon_words", "witt_number", "standard_factorization", "bracket_expansion",
    "LieBasis", "lie_basis", "free_lie_submodule", "gamma_quotient", "l_n_map",
    "phi_n_map", "j_n", "TorsionReport", "torsion_report",
]

LyndonWord = tuple[int, ...]


def _mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def witt_number(r: int, n: int) -> int:
    """Rank of the degree-n part of the free Lie ring on r generators."""
    total = sum(_mobius(d) * r ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def lyndon_words(r: int, n: int) -> list[LyndonWord]:
    """All Lyndon words of length ``n`` over ``0..r-1``, in lexicographic order (Duval)."""
    if r < 1 or n < 1:
        raise ValueError("alphabet size and length must be positive")
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == r - 1:
            w.pop()
    return out


def standard_factorization(w: LyndonWord) -> tuple[LyndonWord, LyndonWord]:
    """``w = uv`` with ``v`` the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no factorisation")
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return w[:i], v
    raise AssertionError("unreachable")


def _is_lyndon(w: LyndonWord) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=4096)
def _expand(w: LyndonWord) -> dict[tuple[int, ...], int]:
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    eu, ev = _expand(u), _expand(v)
    out: dict = {}
    for a, x in eu.items():
        for b, y in ev.items():
            out[a + b] = out.get(a + b, 0) + x * y
            out[b + a] = out.get(b + a, 0) - x * y
    return {k: c for k, c in out.items() if c}


def bracket_expansion(w: LyndonWord, r: int) -> dict[int, int]:
    """Tensor coordinates of the standard bracketing of ``w``.

    Index of ``e_(a1) (x) ... (x) e_(an)`` is ``a1 r^(n-1) + ... + an``
    (leftmost factor major, matching :func:`relhom.zgmod.tensor`).
    """
    out = {}
    for word, c in _expand(tuple(w)).items():
        idx = 0
        for a in word:
            idx = idx * r + a
        out[idx] = c
    return out


@dataclass(frozen=True)
class LieBasis:
    n: int
    r: int
    words: tuple[LyndonWord, ...]
    expansions: IntMat  # (r^n, #words)


@lru_cache(maxsize=64)
def lie_basis(r: int, n: int) -> LieBasis:
    words = tuple(lyndon_words(r, n))
    E = IntMat.from_sparse_columns([bracket_expansion(w, r) for w in words], r ** n)
    return LieBasis(n, r, words, E)


def free_lie_submodule(M: ZGModule, n: int, budget: Optional[int] = None) -> tuple[ZGModule, ZGMap]:
    """``L_n(M)`` with its inclusion into ``M^(x)n``.

    The action on the Lyndon basis is the exact integer solution of
    ``E X = A^(x)n E``; a missing solution is a bug, not an input error.
    """
    _budget(M.rank ** n, budget, f"L_{n}")
    basis = lie_basis(M.rank, n)
    E = basis.expansions
    Mn = tensor_power(M, n)
    k = E.cols
    if k == 0:
        L = ZGModule(M.group, 0, [IntMat.zeros(0, 0)] * M.group.order, check=False, label=f"L_{n}")
        return L, ZGMap(L, Mn, E, check=False)
    solver = LatticeSolver(E)
    action = []
    for g in M.group.elements():
        AE = Mn.action[g] @ E
        cols = []
        for j in range(k):
            y = solver.solve(AE.column(j))
            if y is None:
                raise InvariantViolation(f"group element {g} does not preserve L_{n}",
                                         witness=AE.column(j))
            cols.append(y)
        action.append(IntMat.from_columns(cols, k))
    L = ZGModule(M.group, k, action, check=True, label=f"L_{n}")
    return L, ZGMap(L, Mn, E, check=True)


def _relmod_lie(pg: PresentedGroup, n: int, budget: Optional[int]):
    return free_lie_submodule(pg.relmod, n, budget)


def gamma_quotient(p: PresLike, n: int, budget: Optional[int] = None) -> PresentedAbGroup:
    """``gamma_n R / [gamma_n R, F] = H_0(G, L_n R_ab)``."""
    pg = realize(p)
    L, _ = _relmod_lie(pg, n, budget)
    return coinvariants(L)


def l_n_map(p: PresLike, n: int, budget: Optional[int] = None) -> InducedMap:
    """``l_n : H_0(L_n R_ab) -> H_0(R_ab^(x)n)``."""
    pg = realize(p)
    _, inc = _relmod_lie(pg, n, budget)
    return induced_coinvariant_map(inc)


def phi_n_map(p: PresLike, n: int, budget: Optional[int] = None,
              l_n: Optional[InducedMap] = None) -> InducedMap:
    """``phi_n``: ``l_n`` followed by the Magnus power on coinvariants."""
    pg = realize(p)
    _budget((pg.m * pg.d) ** n, budget, f"phi_{n}")
    ln = l_n_map(pg, n, budget) if l_n is None else l_n
    mu = induced_coinvariant_map(magnus_power(pg, n), source=ln.target, check=False)
    out = mu.compose(ln)
    out.check_well_defined()
    return out


def j_n(p: PresLike, n: int, budget: Optional[int] = None) -> AbInvariants:
    return kernel_of_induced(l_n_map(p, n, budget)).invariants


@dataclass
class TorsionReport:
    n: int
    gamma: AbInvariants
    j_n: AbInvariants
    ker_phi: AbInvariants
    checks: list[tuple[str, bool]] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def _torsion_subgroup(P: PresentedAbGroup) -> Subquotient:
    e = P.invariants.exponent
    return n_torsion(P, e)


def torsion_report(p: PresLike, n: int, budget: Optional[int] = None,
                   strict: bool = True) -> TorsionReport:
    """Check the torsion statements about ``J_n``, ``ker phi_n`` and ``l_n``.

    (a) ``J_n`` is n-torsion; (b) ``l_n`` maps ``ker phi_n`` into the
    n-torsion of ``H_0(R_ab^n)``; (c) ``ker phi_n`` is the torsion subgroup
    of the gamma quotient; (d) ``n`` (``4`` when ``n = 2``) kills ``ker phi_n``.
    """
    if n < 2:
        raise ValueError("torsion report needs n >= 2")
    pg = realize(p)
    ln = l_n_map(pg, n, budget)
    phi = phi_n_map(pg, n, budget, l_n=ln)
    gamma = ln.source
    J = kernel_of_induced(ln)
    K = kernel_of_induced(phi)
    rep = TorsionReport(n, gamma.invariants, J.invariants, K.invariants)

    bad = [v for v in J.lifts if not gamma.contains_relation([n * x for x in v])]
    rep.checks.append(("J_n is n-torsion", not bad))
    if bad:
        rep.witnesses["J_n is n-torsion"] = bad

    target_tors = n_torsion(ln.target, n)
    bad = [v for v in K.lifts if not target_tors.contains(ln(v))]
    rep.checks.append(("l_n(ker phi_n) in n-torsion", not bad))
    if bad:
        rep.witnesses["l_n(ker phi_n) in n-torsion"] = bad

    T = _torsion_subgroup(gamma)
    fwd = [v for v in K.lifts if not T.contains(v)]
    back = [v for v in T.lifts if not K.contains(v)]
    rep.checks.append(("ker phi_n = torsion of gamma quotient", not fwd and not back))
    if fwd or back:
        rep.witnesses["ker phi_n = torsion of gamma quotient"] = (fwd, back)

    e = 4 if n == 2 else n
    bad = [v for v in K.lifts if not gamma.contains_relation([e * x for x in v])]
    rep.checks.append((f"{e} kills ker phi_n", not bad))
    if bad:
        rep.witnesses[f"{e} kills ker phi_n"] = bad

    if strict and not rep.passed:
        failed = [name for name, ok in rep.checks if not ok]
        raise InvariantViolation(f"torsion report fails: {', '.join(failed)}", witness=rep.witnesses)
    return rep
