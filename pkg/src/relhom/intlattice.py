"""Exact integer matrix algebra.

Everything here works over Python integers (arbitrary precision); no
floating point and no fixed-width arithmetic is used anywhere.

Orientation convention, fixed once for the whole package: a relation matrix
``A`` with ``c`` columns presents the abelian group ``Z^c / rowspan(A)``.
Vectors are plain lists of ints.

The workhorse is :func:`smith`, a sparse Smith normal form with Markowitz
pivoting: among the candidate pivots it takes the one minimising
``(nnz(row) - 1) * (nnz(col) - 1)``, preferring unit entries and breaking
ties by the smallest absolute value.  Kernels, lattice solves and quotient
coordinates are all read off the unimodular transforms it returns.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMat",
    "SmithForm",
    "AbInvariants",
    "QuotientCoordinates",
    "LatticeSolver",
    "xgcd",
    "smith",
    "elementary_divisors",
    "invariant_factors",
    "cokernel_invariants",
    "kernel_basis",
    "solve_in_lattice",
    "lattice_contains",
    "same_lattice",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _axpy(target: dict, source: dict, q: int) -> None:
    # target += q * source, dropping zeros
    for k, v in source.items():
        nv = target.get(k, 0) + q * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class IntMat:
    """Sparse integer matrix stored as ``{row: {col: value}}``.

    Zero entries are never stored.  Instances are treated as immutable once
    built; the helpers below always return new matrices.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[dict] = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean = {}
        if data:
            for i, row in data.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row index {i} out of range")
                r = {}
                for j, v in row.items():
                    if not 0 <= j < cols:
                        raise IndexError(f"column index {j} out of range")
                    if v:
                        r[j] = int(v)
                if r:
                    clean[i] = r
        self._data = clean

    @classmethod
    def _raw(cls, rows, cols, data):
        # trusted constructor: data already clean
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        return m

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMat":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls._raw(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMat":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        data = {}
        for i, r in enumerate(rows):
            d = {j: int(v) for j, v in enumerate(r) if v}
            if d:
                data[i] = d
        return cls._raw(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMat":
        data: dict = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                if v:
                    data.setdefault(i, {})[j] = int(v)
        return cls._raw(rows, len(columns), data)

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[dict], rows: int) -> "IntMat":
        data: dict = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    if not 0 <= i < rows:
                        raise IndexError(f"row index {i} out of range")
                    data.setdefault(i, {})[j] = int(v)
        return cls._raw(rows, len(columns), data)

    @classmethod
    def from_sparse_rows(cls, rowdicts: Sequence[dict], cols: int) -> "IntMat":
        return cls(len(rowdicts), cols, {i: r for i, r in enumerate(rowdicts) if r})

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMat":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        return cls(rows, cols, {i: {i: e} for i, e in enumerate(entries) if e})

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "IntMat":
        """Matrix sending basis vector ``e_j`` to ``e_{perm[j]}``."""
        return cls._raw(len(perm), len(perm), {p: {j: 1} for j, p in enumerate(perm)})

    # -- access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict:
        """Sparse copy of row ``i``."""
        return dict(self._data.get(i, {}))

    def row_items(self):
        return ((i, r) for i, r in self._data.items())

    def entries(self):
        for i, r in self._data.items():
            for j, v in r.items():
                yield i, j, v

    def column(self, j: int) -> list[int]:
        return [self._data.get(i, {}).get(j, 0) for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        out = [[0] * self.rows for _ in range(self.cols)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[j][i] = v
        return out

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMat):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.entries()))))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMat({self.to_dense()!r})"
        return f"IntMat<{self.rows}x{self.cols}, nnz={self.nnz}>"

    # -- arithmetic ---------------------------------------------------

    @property
    def T(self) -> "IntMat":
        data: dict = {}
        for i, r in self._data.items():
            for j, v in r.items():
                data.setdefault(j, {})[i] = v
        return IntMat._raw(self.cols, self.rows, data)

    def __matmul__(self, other):
        if isinstance(other, IntMat):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            od = other._data
            data = {}
            for i, r in self._data.items():
                acc: dict = {}
                for k, a in r.items():
                    orow = od.get(k)
                    if orow:
                        for j, b in orow.items():
                            acc[j] = acc.get(j, 0) + a * b
                acc = {j: v for j, v in acc.items() if v}
                if acc:
                    data[i] = acc
            return IntMat._raw(self.rows, other.cols, data)
        return self.matvec(other)

    def matvec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != {self.cols}")
        out = [0] * self.rows
        for i, r in self._data.items():
            s = 0
            for j, a in r.items():
                x = v[j]
                if x:
                    s += a * x
            out[i] = s
        return out

    def vecmat(self, v: Sequence[int]) -> list[int]:
        """Row vector times matrix."""
        if len(v) != self.rows:
            raise ValueError(f"vector length {len(v)} != {self.rows}")
        out = [0] * self.cols
        for i, r in self._data.items():
            x = v[i]
            if x:
                for j, a in r.items():
                    out[j] += a * x
        return out

    def _combine(self, other: "IntMat", sign: int) -> "IntMat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {i: dict(r) for i, r in self._data.items()}
        for i, r in other._data.items():
            t = data.setdefault(i, {})
            _axpy(t, r, sign)
            if not t:
                del data[i]
        return IntMat._raw(self.rows, self.cols, data)

    def __add__(self, other: "IntMat") -> "IntMat":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMat") -> "IntMat":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMat":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMat":
        if c == 0:
            return IntMat.zeros(self.rows, self.cols)
        return IntMat._raw(self.rows, self.cols,
                           {i: {j: c * v for j, v in r.items()} for i, r in self._data.items()})

    def kron(self, other: "IntMat") -> "IntMat":
        """Kronecker product; row/column index ``(i, k) -> i*other.rows + k``."""
        data = {}
        orows, ocols = other.rows, other.cols
        for i, r in self._data.items():
            for k, orow in other._data.items():
                data[i * orows + k] = {j * ocols + l: a * b
                                       for j, a in r.items() for l, b in orow.items()}
        return IntMat._raw(self.rows * orows, self.cols * ocols, data)

    def hstack(self, *others: "IntMat") -> "IntMat":
        mats = (self,) + others
        if len({m.rows for m in mats}) != 1:
            raise ValueError("hstack needs equal row counts")
        data: dict = {}
        off = 0
        for m in mats:
            for i, r in m._data.items():
                data.setdefault(i, {}).update({j + off: v for j, v in r.items()})
            off += m.cols
        return IntMat._raw(self.rows, off, data)

    def vstack(self, *others: "IntMat") -> "IntMat":
        mats = (self,) + others
        if len({m.cols for m in mats}) != 1:
            raise ValueError("vstack needs equal column counts")
        data = {}
        off = 0
        for m in mats:
            for i, r in m._data.items():
                data[i + off] = dict(r)
            off += m.rows
        return IntMat._raw(off, self.cols, data)

    def block_diag(self, *others: "IntMat") -> "IntMat":
        mats = (self,) + others
        data = {}
        ro = co = 0
        for m in mats:
            for i, r in m._data.items():
                data[i + ro] = {j + co: v for j, v in r.items()}
            ro += m.rows
            co += m.cols
        return IntMat._raw(ro, co, data)

    def select_rows(self, idx: Sequence[int]) -> "IntMat":
        data = {}
        for new, old in enumerate(idx):
            r = self._data.get(old)
            if r:
                data[new] = dict(r)
        return IntMat._raw(len(idx), self.cols, data)

    def select_cols(self, idx: Sequence[int]) -> "IntMat":
        where = {old: new for new, old in enumerate(idx)}
        data = {}
        for i, r in self._data.items():
            nr = {where[j]: v for j, v in r.items() if j in where}
            if nr:
                data[i] = nr
        return IntMat._raw(self.rows, len(idx), data)


# ---------------------------------------------------------------------------
# invariant factors


def invariant_factors(entries: Iterable[int]) -> list[int]:
    """Merge arbitrary diagonal entries into an invariant-factor chain.

    Returns the nonunit factors ``d_1 | d_2 | ...`` with zeros (free
    summands) last, e.g. ``[2, 3] -> [6]`` and ``[0, 4, 2] -> [2, 4, 0]``.
    """
    vals = [abs(e) for e in entries if abs(e) != 1]
    zeros = sum(1 for v in vals if v == 0)
    vals = [v for v in vals if v]
    # pairwise (gcd, lcm) until the chain divides
    k = len(vals)
    for s in range(k):
        for t in range(s + 1, k):
            a, b = vals[s], vals[t]
            if b % a:
                g = gcd(a, b)
                vals[s], vals[t] = g, a // g * b
    vals = sorted(v for v in vals if v != 1)
    return vals + [0] * zeros


@dataclass(frozen=True, order=True)
class AbInvariants:
    """Canonical form of a finitely generated abelian group."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"torsion {t} is not a divisibility chain")
        if any(x < 2 for x in t):
            raise ValueError(f"torsion factors must be >= 2, got {t}")

    @classmethod
    def from_diagonal(cls, entries: Iterable[int], ambient: int) -> "AbInvariants":
        """Invariants of ``Z^ambient / (diagonal lattice)``."""
        entries = list(entries)
        rank = sum(1 for e in entries if e)
        facs = invariant_factors(e for e in entries if e)
        return cls(ambient - rank, tuple(facs))

    @classmethod
    def parse(cls, text: str) -> "AbInvariants":
        """Inverse of ``str``: accepts ``0``, ``Z^2 + Z/2``, ``(Z/2)^2``."""
        text = text.strip()
        if text == "0":
            return cls()
        free = 0
        tors: list[int] = []
        for part in text.split("+"):
            part = part.strip()
            power = 1
            if part.startswith("("):
                inner, _, tail = part[1:].partition(")")
                power = int(tail.lstrip("^")) if tail else 1
                part = inner
            elif "^" in part:
                part, _, p = part.partition("^")
                power = int(p)
            if part == "Z":
                free += power
            elif part.startswith("Z/"):
                tors.extend([int(part[2:])] * power)
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        return cls(free, tuple(invariant_factors(tors)))

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion-free)."""
        return self.torsion[-1] if self.torsion else 1

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def n_torsion(self, n: int) -> "AbInvariants":
        return AbInvariants(0, tuple(invariant_factors(gcd(n, t) for t in self.torsion)))

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        t = list(self.torsion)
        i = 0
        while i < len(t):
            j = i
            while j < len(t) and t[j] == t[i]:
                j += 1
            k = j - i
            parts.append(f"Z/{t[i]}" if k == 1 else f"(Z/{t[i]})^{k}")
            i = j
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    The diagonal ``d_1 | d_2 | ... | d_k`` is nonnegative with zeros last.
    ``V_inv`` is the exact inverse of ``V``; it is what quotient coordinates
    and cyclic generators are read from.
    """

    D: IntMat
    U: Optional[IntMat]
    V: Optional[IntMat]
    V_inv: Optional[IntMat] = None
    diagonal: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class _Eliminator:
    """Sparse two-sided elimination with optional transform tracking."""

    def __init__(self, A: IntMat, track_u: bool, track_v: bool):
        self.rows = {i: dict(r) for i, r in A._data.items()}
        self.colidx: dict = defaultdict(set)
        for i, r in self.rows.items():
            for j in r:
                self.colidx[j].add(i)
        self.track_u = track_u
        self.track_v = track_v
        self.U = {i: {i: 1} for i in range(A.rows)} if track_u else None
        self.Vt = {j: {j: 1} for j in range(A.cols)} if track_v else None
        self.Vinv = {j: {j: 1} for j in range(A.cols)} if track_v else None
        self.heap = [(len(r), i) for i, r in self.rows.items()]
        heapq.heapify(self.heap)

    # row_k += q * row_i
    def row_op(self, k: int, i: int, q: int) -> None:
        rk = self.rows[k]
        ci = self.colidx
        for j, v in self.rows[i].items():
            nv = rk.get(j, 0) + q * v
            if nv:
                if j not in rk:
                    ci[j].add(k)
                rk[j] = nv
            else:
                if j in rk:
                    del rk[j]
                    ci[j].discard(k)
        if self.track_u:
            _axpy(self.U[k], self.U[i], q)
        heapq.heappush(self.heap, (len(rk), k))

    # col_c += q * col_j, restricted to the one row i where col j lives
    def col_op_single(self, i: int, c: int, j: int, q: int) -> None:
        ri = self.rows[i]
        nv = ri.get(c, 0) + q * ri[j]
        if nv:
            if c not in ri:
                self.colidx[c].add(i)
            ri[c] = nv
        else:
            ri.pop(c, None)
            self.colidx[c].discard(i)
        if self.track_v:
            _axpy(self.Vt[c], self.Vt[j], q)
            _axpy(self.Vinv[j], self.Vinv[c], -q)

    def choose_pivot(self):
        """Markowitz choice over a window of the sparsest rows."""
        heap = self.heap
        rows = self.rows
        seen = []
        best = None
        best_key = None
        while heap and len(seen) < 24:
            ln, i = heapq.heappop(heap)
            r = rows.get(i)
            if r is None or len(r) != ln or i in seen:
                continue
            if not r:
                del rows[i]
                continue
            seen.append(i)
            for j, v in r.items():
                key = (abs(v) != 1, (ln - 1) * (len(self.colidx[j]) - 1), abs(v), i, j)
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j)
            if best_key is not None and not best_key[0] and best_key[1] == 0:
                break
        for i in seen:
            heapq.heappush(heap, (len(rows[i]), i))
        return best

    def run(self) -> list[tuple[int, int, int]]:
        rows = self.rows
        for i in [i for i, r in rows.items() if not r]:
            del rows[i]
        pivots = []
        while rows:
            choice = self.choose_pivot()
            if choice is None:
                break
            i, j = choice
            while True:
                # clear column j below/above the pivot by row operations
                p = rows[i][j]
                others = [k for k in self.colidx[j] if k != i]
                dirty = False
                for k in others:
                    a = rows[k][j]
                    q = a // p
                    r = a - q * p
                    if 2 * abs(r) > abs(p):
                        q += 1
                        r = a - q * p
                    self.row_op(k, i, -q)
                    if r:
                        dirty = True
                if dirty:
                    # some remainder smaller than |p| survives: move pivot there
                    k = min((k for k in self.colidx[j]),
                            key=lambda k: (abs(rows[k][j]), len(rows[k]), k))
                    i = k
                    continue
                # clear row i by column operations (column j is now a singleton)
                p = rows[i][j]
                dirty = False
                for c in [c for c in rows[i] if c != j]:
                    b = rows[i][c]
                    q = b // p
                    r = b - q * p
                    if 2 * abs(r) > abs(p):
                        q += 1
                        r = b - q * p
                    self.col_op_single(i, c, j, -q)
                    if r:
                        dirty = True
                if dirty:
                    j = min((c for c in rows[i]), key=lambda c: (abs(rows[i][c]), len(self.colidx[c]), c))
                    continue
                break
            p = rows[i][j]
            pivots.append((i, j, p))
            del rows[i]
            self.colidx[j].discard(i)
            del self.colidx[j]
        return pivots


def _as_mat(d: dict, n: int) -> IntMat:
    return IntMat._raw(n, n, {i: r for i, r in d.items() if r})


def elementary_divisors(A: IntMat) -> list[int]:
    """Absolute values of a diagonalisation of ``A`` (no divisibility fix-up).

    Cheaper than :func:`smith` because no transforms are tracked; feed the
    result to :func:`invariant_factors` for the canonical chain.
    """
    el = _Eliminator(A, False, False)
    return [abs(p) for _, _, p in el.run()]


def smith(A: IntMat, transforms: bool = True, check: bool = True) -> SmithForm:
    """Smith normal form ``U @ A @ V == D``.

    With ``check`` the identity ``U A V = D`` is re-verified before return.
    """
    n, c = A.shape
    el = _Eliminator(A, transforms, transforms)
    pivots = el.run()
    k = len(pivots)
    if not transforms:
        diag = invariant_factors(p for _, _, p in pivots)
        full = [1] * (k - len(diag)) + diag
        return SmithForm(IntMat.diagonal(full, n, c), None, None, None, full)

    prow = [i for i, _, _ in pivots]
    pcol = [j for _, j, _ in pivots]
    rest_r = sorted(set(range(n)) - set(prow))
    rest_c = sorted(set(range(c)) - set(pcol))
    rorder = prow + rest_r
    corder = pcol + rest_c
    U = [el.U[i] for i in rorder]
    Vt = [el.Vt[j] for j in corder]
    Vinv = [el.Vinv[j] for j in corder]
    d = [p for _, _, p in pivots]

    for s in range(k):
        if d[s] < 0:
            d[s] = -d[s]
            U[s] = {key: -v for key, v in U[s].items()}

    def fix(s: int, t: int) -> None:
        a, b = d[s], d[t]
        x, y, g = xgcd(a, b)
        ag, bg = a // g, b // g
        us, ut = U[s], U[t]
        nus: dict = {}
        _axpy(nus, us, x)
        _axpy(nus, ut, y)
        nut: dict = {}
        _axpy(nut, us, -bg)
        _axpy(nut, ut, ag)
        U[s], U[t] = nus, nut
        vs, vt = Vt[s], Vt[t]
        nvs = dict(vs)
        _axpy(nvs, vt, 1)
        nvt: dict = {}
        _axpy(nvt, vs, -y * bg)
        _axpy(nvt, vt, x * ag)
        Vt[s], Vt[t] = nvs, nvt
        ws, wt = Vinv[s], Vinv[t]
        nws: dict = {}
        _axpy(nws, ws, x * ag)
        _axpy(nws, wt, y * bg)
        nwt: dict = {}
        _axpy(nwt, ws, -1)
        _axpy(nwt, wt, 1)
        Vinv[s], Vinv[t] = nws, nwt
        d[s], d[t] = g, ag * b

    # divisibility chain; all pivots are nonzero so no zero handling needed
    for s in range(k):
        if d[s] == 1:
            continue
        for t in range(s + 1, k):
            if d[t] % d[s]:
                fix(s, t)
                if d[s] == 1:
                    break
    # ascending order: stable sort of the diagonal with matching permutation
    order = sorted(range(k), key=lambda s: d[s])
    if order != list(range(k)):
        d = [d[s] for s in order]
        U[:k] = [U[s] for s in order]
        Vt[:k] = [Vt[s] for s in order]
        Vinv[:k] = [Vinv[s] for s in order]

    Um = IntMat._raw(n, n, {i: r for i, r in enumerate(U) if r})
    Vm = IntMat._raw(c, c, {i: r for i, r in enumerate(Vt) if r}).T
    Vinvm = IntMat._raw(c, c, {i: r for i, r in enumerate(Vinv) if r})
    full = d + [0] * (min(n, c) - k)
    D = IntMat.diagonal(d, n, c)
    if check:
        if Um @ A @ Vm != D:
            raise ArithmeticError("Smith form verification U*A*V == D failed")
        if (Vm @ Vinvm) != IntMat.identity(c):
            raise ArithmeticError("Smith form verification V*V^-1 == I failed")
    return SmithForm(D, Um, Vm, Vinvm, full)


def cokernel_invariants(A: IntMat) -> AbInvariants:
    """Invariants of ``Z^c / rowspan(A)`` where ``c = A.cols``."""
    divs = elementary_divisors(A)
    return AbInvariants(A.cols - len(divs), tuple(invariant_factors(divs)))


def kernel_basis(A: IntMat) -> IntMat:
    """Columns form a Z-basis of the (saturated) integer kernel of ``A``."""
    sf = smith(A, transforms=True, check=False)
    r = sf.rank
    return sf.V.select_cols(range(r, A.cols))


class LatticeSolver:
    """Solve ``A x = b`` over the integers for many right-hand sides."""

    def __init__(self, A: IntMat):
        self.A = A
        self.sf = smith(A, transforms=True, check=False)
        self.rank = self.sf.rank

    def solve(self, b: Sequence[int]) -> Optional[list[int]]:
        A = self.A
        if len(b) != A.rows:
            raise ValueError("right-hand side has wrong length")
        ub = self.sf.U.matvec(b)
        diag = self.sf.diagonal
        y = [0] * A.cols
        for i in range(A.rows):
            di = diag[i] if i < len(diag) else 0
            if di:
                q, r = divmod(ub[i], di)
                if r:
                    return None
                y[i] = q
            elif ub[i]:
                return None
        return self.sf.V.matvec(y)

    def contains(self, b: Sequence[int]) -> bool:
        return self.solve(b) is not None


def solve_in_lattice(A: IntMat, b: Sequence[int]) -> Optional[list[int]]:
    """Some integer ``x`` with ``A x = b``, or ``None`` when none exists."""
    return LatticeSolver(A).solve(b)


def lattice_contains(gens: IntMat, vectors: Iterable[Sequence[int]]) -> bool:
    """Whether every vector lies in the column lattice of ``gens``."""
    solver = LatticeSolver(gens)
    return all(solver.contains(v) for v in vectors)


def same_lattice(A: IntMat, B: IntMat) -> bool:
    """Equality of the column lattices of ``A`` and ``B`` (same row count)."""
    if A.rows != B.rows:
        raise ValueError("lattices live in different ambient spaces")
    return lattice_contains(A, B.columns()) and lattice_contains(B, A.columns())


class QuotientCoordinates:
    """Canonical coordinates on ``Z^c / rowspan(R)``.

    With ``U R V = D`` the map ``z -> z V`` carries the relation lattice onto
    ``rowspan(D)``.  Coordinates at unit diagonal positions are dropped;
    torsion coordinates are reduced modulo their factor; the remaining ones
    are free.
    """

    def __init__(self, relations: IntMat):
        self.relations = relations
        c = relations.cols
        sf = smith(relations, transforms=True, check=False)
        self.sf = sf
        diag = list(sf.diagonal[: sf.rank]) + [0] * (c - sf.rank)
        self.positions = [j for j, dj in enumerate(diag) if dj != 1]
        self.moduli = [diag[j] for j in self.positions]
        self.invariants = AbInvariants(
            sum(1 for m in self.moduli if m == 0),
            tuple(m for m in self.moduli if m),
        )
        # columns of V at the kept positions
        self._proj = sf.V.select_cols(self.positions)

    def coords(self, z: Sequence[int]) -> list[int]:
        w = self._proj.vecmat(z)
        return [x % m if m else x for x, m in zip(w, self.moduli)]

    def projection_matrix(self) -> IntMat:
        """Integer matrix taking ambient vectors to unreduced coordinates."""
        return self._proj.T

    def is_zero(self, z: Sequence[int]) -> bool:
        return not any(self.coords(z))

    def generators(self) -> list[tuple[list[int], int]]:
        """Ambient lifts of the cyclic generators with their orders (0 = infinite)."""
        vinv = self.sf.V_inv
        c = self.relations.cols
        out = []
        for j, m in zip(self.positions, self.moduli):
            row = vinv.row(j)
            out.append(([row.get(t, 0) for t in range(c)], m))
        return out

    def relation_basis(self) -> IntMat:
        """A row basis of the relation lattice."""
        vinv = self.sf.V_inv
        diag = self.sf.diagonal
        rows = []
        for j in range(self.sf.rank):
            rows.append({t: diag[j] * v for t, v in vinv.row(j).items()})
        return IntMat.from_sparse_rows(rows, self.relations.cols)
