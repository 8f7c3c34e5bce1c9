"""Exact linear algebra over Z and Z/m, finitely generated abelian groups, L0(Ab).

Matrices are plain lists of lists of Python ints (arbitrary precision).  The
Z/m kernel engine (:class:`ModularKernel`) works on residues and only applies
row operations that are unimodular over Z, so it computes exactly the lattice
``{x : A x = 0 mod m}`` that integer SNF of ``[A | m*I]`` would give.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import factorint

from .errors import ExpressFailed, NotAHomomorphism, NotFinite

Matrix = list[list[int]]


def _shape(M, ncols=None) -> tuple[int, int]:
    if isinstance(M, np.ndarray):
        return M.shape[0], M.shape[1]
    r = len(M)
    if r:
        return r, len(M[0])
    return 0, (ncols or 0)


def _as_rows(M) -> Matrix:
    if isinstance(M, np.ndarray):
        return [[int(x) for x in row] for row in M.tolist()]
    return [[int(x) for x in row] for row in M]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    k = len(A[0]) if inner is None else inner
    cols = len(B[0]) if B else 0
    Bt = [[B[i][j] for i in range(k)] for j in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


# ------------------------------------------------------------- Smith normal form


@dataclass
class SmithForm:
    D: Matrix
    U: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.V)))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_form(M, ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms: ``U M V = D`` and the inverses of U, V.

    Diagonal entries are nonnegative and form a divisibility chain.
    """
    r, c = _shape(M, ncols)
    A = _as_rows(M) if r else []
    U, Uinv = identity_matrix(r), identity_matrix(r)
    V, Vinv = identity_matrix(c), identity_matrix(c)

    # Row op  R_i <- R_i + q R_j  : U same op, Uinv gets C_j <- C_j - q C_i.
    def row_add(i, j, q):
        if q == 0:
            return
        Ai, Aj = A[i], A[j]
        for k in range(c):
            if Aj[k]:
                Ai[k] += q * Aj[k]
        Ui, Uj = U[i], U[j]
        for k in range(r):
            if Uj[k]:
                Ui[k] += q * Uj[k]
        for row in Uinv:
            if row[i]:
                row[j] -= q * row[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    # Column op C_i <- C_i + q C_j : V same op, Vinv gets R_j <- R_j - q R_i.
    def col_add(i, j, q):
        if q == 0:
            return
        for row in A:
            if row[j]:
                row[i] += q * row[j]
        for row in V:
            if row[j]:
                row[i] += q * row[j]
        Vi, Vj = Vinv[i], Vinv[j]
        for k in range(c):
            if Vi[k]:
                Vj[k] -= q * Vi[k]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    for t in range(min(r, c)):
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)

        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    q = A[i][t] // p
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if A[t][j]:
                    q = A[t][j] // p
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/col t onto the pivot
                cand = [(abs(A[i][t]), i, "r") for i in range(t + 1, r) if A[i][t]]
                cand += [(abs(A[t][j]), j, "c") for j in range(t + 1, c) if A[t][j]]
                _, k, kind = min(cand)
                if kind == "r":
                    row_swap(k, t)
                else:
                    col_swap(k, t)
                continue
            bad = next(
                (i for i in range(t + 1, r) if any(x % p for x in A[i][t + 1:])), None
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
    return SmithForm(A, U, V, Uinv, Vinv)


def smith_normal_form(M, ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U M V = D``; U and V are unimodular."""
    s = smith_form(M, ncols)
    return s.D, s.U, s.V


def integer_kernel(M, ncols: int | None = None) -> Matrix:
    """Z-basis of ``{x : M x = 0}`` as a list of vectors."""
    r, c = _shape(M, ncols)
    s = smith_form(M, c)
    k = s.rank
    return [[s.V[i][j] for i in range(c)] for j in range(k, c)]


def solve_integer(M, b: Sequence[int], ncols: int | None = None) -> list[int] | None:
    """An integer solution of ``M x = b`` or ``None``."""
    r, c = _shape(M, ncols)
    s = smith_form(M, c)
    ub = [sum(u * x for u, x in zip(row, b)) for row in s.U]
    y = [0] * c
    for i in range(r):
        d = s.D[i][i] if i < c else 0
        if d:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
        elif ub[i]:
            return None
    return [sum(v * yj for v, yj in zip(row, y)) for row in s.V]


# --------------------------------------------------------- abelian group types


def _prime_power_parts(n: int) -> list[int]:
    return [p ** a for p, a in sorted(factorint(n).items())]


@dataclass(frozen=True)
class FGAbelian:
    """``Z^rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and every ``di >= 2``."""

    rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(d < 2 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not an invariant factor chain: {f}")

    @classmethod
    def from_orders(cls, rank: int = 0, torsion: Iterable[int] = ()) -> "FGAbelian":
        """Any list of cyclic orders (0 meaning Z), canonicalized."""
        torsion = [int(t) for t in torsion]
        extra_rank = sum(1 for t in torsion if t == 0)
        return canonicalize(PresentedAbelian.diagonal([abs(t) for t in torsion if t]),
                            extra_rank=rank + extra_rank)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        return reduce(lambda a, b: a * b, self.invariant_factors, 1)

    @property
    def torsion_free(self) -> bool:
        return not self.invariant_factors

    def direct_sum(self, other: "FGAbelian") -> "FGAbelian":
        return FGAbelian.from_orders(self.rank + other.rank,
                                     self.invariant_factors + other.invariant_factors)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " x ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.invariant_factors)}


TRIVIAL = FGAbelian()


@dataclass(frozen=True)
class PresentedAbelian:
    """``Z^generators / (column span of relations)``; relations has one row per generator."""

    generators: int
    relations: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rel = tuple(tuple(int(x) for x in row) for row in self.relations)
        if self.generators and not rel:
            rel = tuple(() for _ in range(self.generators))
        if len(rel) != self.generators:
            raise ValueError("relation matrix must have one row per generator")
        object.__setattr__(self, "relations", rel)

    @property
    def num_relations(self) -> int:
        return len(self.relations[0]) if self.relations else 0

    @classmethod
    def diagonal(cls, orders: Sequence[int]) -> "PresentedAbelian":
        n = len(orders)
        return cls(n, tuple(tuple(orders[i] if i == j else 0 for j in range(n))
                            for i in range(n)))

    @classmethod
    def from_columns(cls, generators: int, columns: Iterable[Sequence[int]]) -> "PresentedAbelian":
        cols = [list(c) for c in columns]
        return cls(generators, tuple(tuple(col[i] for col in cols)
                                     for i in range(generators)))

    def columns(self) -> list[list[int]]:
        return [[row[j] for row in self.relations] for j in range(self.num_relations)]

    def direct_sum(self, other: "PresentedAbelian") -> "PresentedAbelian":
        n1, n2 = self.generators, other.generators
        cols = [c + [0] * n2 for c in self.columns()]
        cols += [[0] * n1 + c for c in other.columns()]
        return PresentedAbelian.from_columns(n1 + n2, cols)


def canonicalize(P: PresentedAbelian, extra_rank: int = 0) -> FGAbelian:
    """Cokernel of the relation matrix in invariant-factor form."""
    if P.generators == 0:
        return FGAbelian(extra_rank)
    s = smith_form([list(r) for r in P.relations], P.num_relations)
    diag = s.diagonal + [0] * (P.generators - len(s.diagonal))
    rank = sum(1 for d in diag if d == 0)
    factors = sorted(d for d in diag if d > 1)
    return FGAbelian(rank + extra_rank, tuple(factors))


def direct_sum_all(presentations: Sequence[PresentedAbelian]) -> PresentedAbelian:
    return reduce(lambda a, b: a.direct_sum(b), presentations, PresentedAbelian(0))


def _in_column_span(R: Matrix, ncols: int, b: Sequence[int]) -> bool:
    if not any(b):
        return True
    if ncols == 0:
        return False
    return solve_integer(R, b, ncols) is not None


def kernel_of_presented_hom(dom: PresentedAbelian, cod: PresentedAbelian, hom) -> FGAbelian:
    """Kernel of the homomorphism induced by ``hom`` (cod.generators x dom.generators).

    Raises :class:`NotAHomomorphism` unless ``hom`` maps every relation of
    ``dom`` into the relation span of ``cod``.
    """
    n, p = dom.generators, cod.generators
    M = _as_rows(hom) if p else []
    if p and any(len(row) != n for row in M):
        raise ValueError("map must have shape cod.generators x dom.generators")
    Rc = [list(r) for r in cod.relations]
    s_c = cod.num_relations
    for j, col in enumerate(dom.columns()):
        image = [sum(m * x for m, x in zip(row, col)) for row in M]
        if not _in_column_span(Rc, s_c, image):
            raise NotAHomomorphism(f"relation {j} of the domain is not sent to zero")

    # K = {x : M x in span(Rc)}, the projection of ker [M | -Rc]
    if p == 0:
        K = identity_matrix(n)
    else:
        big = [M[i] + [-v for v in Rc[i]] for i in range(p)]
        K = [v[:n] for v in integer_kernel(big, n + s_c)]
    t = len(K)
    if t == 0:
        return TRIVIAL
    # relations among the K generators modulo span(Rd): ker [K^T | -Rd] projected
    Rd = [list(r) for r in dom.relations]
    s_d = dom.num_relations
    big = [[K[j][i] for j in range(t)] + [-v for v in Rd[i]] for i in range(n)]
    rel = [v[:t] for v in integer_kernel(big, t + s_d)]
    return canonicalize(PresentedAbelian.from_columns(t, rel))


# ----------------------------------------------------------------------- L0(Ab)


@dataclass(frozen=True)
class L0AbElement:
    """Integer combination of the basis classes {Z} and {Z/p^a}.

    Keys of ``coefficients``: 0 stands for Z, a prime power q for Z/q.
    """

    coefficients: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for q, c in dict(self.coefficients).items():
            q, c = int(q), int(c)
            if q != 0 and len(factorint(q)) != 1:
                raise ValueError(f"Z/{q} is not a basis label (need a prime power)")
            if c:
                clean[q] = clean.get(q, 0) + c
        object.__setattr__(self, "coefficients",
                           {q: c for q, c in sorted(clean.items()) if c})

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coefficients
        if not isinstance(other, L0AbElement):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __bool__(self):
        return bool(self.coefficients)

    def __add__(self, other: "L0AbElement") -> "L0AbElement":
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.coefficients)
        for q, c in other.coefficients.items():
            out[q] = out.get(q, 0) + c
        return L0AbElement(out)

    __radd__ = __add__

    def __neg__(self):
        return L0AbElement({q: -c for q, c in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int) -> "L0AbElement":
        return L0AbElement({q: k * c for q, c in self.coefficients.items()})

    __mul__ = __rmul__

    def __str__(self):
        if not self.coefficients:
            return "0"
        out = []
        for q, c in self.coefficients.items():
            label = "Z" if q == 0 else f"Z/{q}"
            mag = abs(c)
            tok = label if mag == 1 else f"{mag}{label}"
            if not out:
                out.append(tok if c > 0 else f"-{tok}")
            else:
                out.append(("+ " if c > 0 else "- ") + tok)
        return " ".join(out)

    def __repr__(self):
        return f"L0AbElement({self})"

    @classmethod
    def parse(cls, text: str) -> "L0AbElement":
        """Inverse of ``str``: signed sums of ``Z`` and ``Z/q`` tokens, e.g. ``2Z - Z/4``."""
        import re

        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        token = re.compile(r"([+-]?)(\d*)(Z(?:/(\d+))?)")
        pos, out = 0, {}
        while pos < len(s):
            m = token.match(s, pos)
            if not m or m.end() == pos or (pos > 0 and not m.group(1)):
                raise ValueError(f"cannot parse L0(Ab) element {text!r} at {pos}")
            coeff = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                coeff = -coeff
            if m.group(4) is None:
                out[0] = out.get(0, 0) + coeff
            else:
                for part, c in l0_class_of(FGAbelian.from_orders(0, [int(m.group(4))])).coefficients.items():
                    out[part] = out.get(part, 0) + coeff * c
            pos = m.end()
        return cls(out)


ZERO_L0 = L0AbElement()
Z_CLASS = L0AbElement({0: 1})


def l0_class_of(A: FGAbelian) -> L0AbElement:
    """``rank {Z} + sum of {Z/p^a}`` over the primary parts of the invariant factors."""
    coeffs = {0: A.rank} if A.rank else {}
    for d in A.invariant_factors:
        for q in _prime_power_parts(d):
            coeffs[q] = coeffs.get(q, 0) + 1
    return L0AbElement(coeffs)


def pontryagin_dual(A: FGAbelian) -> FGAbelian:
    """Hom(A, C*) for finite A; finite abelian groups are (non-canonically) self-dual."""
    if A.rank:
        raise NotFinite(f"{A} is infinite; its dual is not finitely generated")
    return FGAbelian(0, A.invariant_factors)


# ------------------------------------------------------------ Z/m kernels


def _unit_part(a: int, m: int) -> tuple[int, int]:
    """Write ``a = u * g (mod m)`` with ``g = gcd(a, m)`` and u a unit; return (g, u)."""
    g = gcd(a, m)
    mg = m // g
    u = (a // g) % mg if mg > 1 else 1
    while gcd(u, m) != 1:
        u += mg
    return g, u % m


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


SPARSE_COLUMN_THRESHOLD = 200


class ModularKernel:
    """The solution group ``{x in (Z/m)^n : A x = 0}`` with a cyclic decomposition.

    ``generators[i]`` has additive order ``orders[i]`` and the group is their
    direct sum.  :meth:`coordinates` expresses any solution in that basis.

    Rows are given sparsely as ``{column: value}`` dicts.  Above
    ``SPARSE_COLUMN_THRESHOLD`` columns a sparse elimination with unit pivots
    runs first and only the residual system goes through the dense
    diagonalization.
    """

    def __init__(self, rows: Sequence[Mapping[int, int]], ncols: int, modulus: int,
                 sparse_threshold: int | None = None):
        self.ncols = ncols
        self.modulus = m = int(modulus)
        self.rows = [{j: v % m for j, v in r.items() if v % m} for r in rows]
        threshold = SPARSE_COLUMN_THRESHOLD if sparse_threshold is None else sparse_threshold
        if ncols > threshold:
            pivots, residual, free = self._sparse_eliminate()
        else:
            pivots, residual, free = [], [r for r in self.rows if r], list(range(ncols))
        self._pivots = pivots
        self._free = free
        self._free_pos = {j: k for k, j in enumerate(free)}
        self._dense_diagonalize(residual)
        self._build_generators()

    # -- sparse phase
    def _sparse_eliminate(self):
        m = self.modulus
        rows = [dict(r) for r in self.rows if r]
        colrows: dict[int, set[int]] = {}
        for i, r in enumerate(rows):
            for j in r:
                colrows.setdefault(j, set()).add(i)
        alive = set(range(len(rows)))
        heap = [(len(r), i) for i, r in enumerate(rows)]
        heapq.heapify(heap)
        pivots = []  # (column, unit-inverse, row dict)
        while heap:
            length, i = heapq.heappop(heap)
            if i not in alive or length != len(rows[i]):
                continue
            r = rows[i]
            if not r:
                alive.discard(i)
                continue
            units = [j for j, v in r.items() if gcd(v, m) == 1]
            if not units:
                continue  # waits for the dense phase unless updated later
            j = min(units, key=lambda c: (len(colrows[c]), c))
            inv = pow(r[j], -1, m)
            alive.discard(i)
            for j2 in r:
                colrows[j2].discard(i)
            pivots.append((j, inv, r))
            for i2 in list(colrows[j]):
                r2 = rows[i2]
                f = (r2[j] * inv) % m
                for j2, v in r.items():
                    nv = (r2.get(j2, 0) - f * v) % m
                    if nv:
                        if j2 not in r2:
                            colrows[j2].add(i2)
                        r2[j2] = nv
                    elif j2 in r2:
                        del r2[j2]
                        colrows[j2].discard(i2)
                heapq.heappush(heap, (len(r2), i2))
            del colrows[j]
        pivot_cols = {p[0] for p in pivots}
        residual = [rows[i] for i in sorted(alive) if rows[i]]
        free = [j for j in range(self.ncols) if j not in pivot_cols]
        return pivots, residual, free

    # -- dense phase over the free columns
    def _dense_diagonalize(self, residual):
        m = self.modulus
        n = len(self._free)
        dtype = np.int64 if m < 3_000_000_000 else object
        B = np.zeros((len(residual), n), dtype=dtype)
        for i, r in enumerate(residual):
            for j, v in r.items():
                B[i, self._free_pos[j]] = v
        V = np.eye(n, dtype=dtype)
        Vinv = np.eye(n, dtype=dtype)
        diag = []
        R = B.shape[0]
        t = 0
        while t < min(R, n):
            sub = B[t:, t:]
            nz = np.argwhere(sub != 0)
            if nz.size == 0:
                break
            vals = sub[nz[:, 0], nz[:, 1]]
            g_all = np.gcd(vals.astype(np.int64) if dtype is np.int64 else vals, m)
            k = int(np.argmin(g_all))
            i, j = int(nz[k, 0]) + t, int(nz[k, 1]) + t
            if i != t:
                B[[t, i]] = B[[i, t]]
            if j != t:
                B[:, [t, j]] = B[:, [j, t]]
                V[:, [t, j]] = V[:, [j, t]]
                Vinv[[t, j]] = Vinv[[j, t]]
            g, u = _unit_part(int(B[t, t]), m)
            B[t] = (B[t] * pow(u, -1, m)) % m
            while True:
                col_bad = [i2 for i2 in np.nonzero(B[:, t])[0] if i2 != t and int(B[i2, t]) % g]
                if col_bad:
                    i2 = int(col_bad[0])
                    b = int(B[i2, t])
                    h, s, tt = _ext_gcd(g, b)
                    rt, ri = B[t].copy(), B[i2].copy()
                    B[t] = (s * rt + tt * ri) % m
                    B[i2] = ((-b // h) * rt + (g // h) * ri) % m
                    g, u = _unit_part(int(B[t, t]), m)
                    B[t] = (B[t] * pow(u, -1, m)) % m
                    continue
                row_bad = [j2 for j2 in np.nonzero(B[t])[0] if j2 != t and int(B[t, j2]) % g]
                if row_bad:
                    j2 = int(row_bad[0])
                    b = int(B[t, j2])
                    h, s, tt = _ext_gcd(g, b)
                    # columns [t, j2] <- [t, j2] @ T with T = [[s, -b/h], [tt, g/h]]
                    T = np.array([[s, -b // h], [tt, g // h]], dtype=object)
                    Tinv = np.array([[g // h, b // h], [-tt, s]], dtype=object)
                    cols = B[:, [t, j2]].astype(object)
                    B[:, [t, j2]] = ((cols @ T) % m).astype(dtype)
                    vc = V[:, [t, j2]].astype(object)
                    V[:, [t, j2]] = ((vc @ T) % m).astype(dtype)
                    vr = Vinv[[t, j2]].astype(object)
                    Vinv[[t, j2]] = ((Tinv @ vr) % m).astype(dtype)
                    g, u = _unit_part(int(B[t, t]), m)
                    B[t] = (B[t] * pow(u, -1, m)) % m
                    continue
                break
            # clear column t with row operations
            rows_nz = [int(x) for x in np.nonzero(B[:, t])[0] if x != t]
            if rows_nz:
                q = (B[rows_nz, t] // g) % m
                B[rows_nz] = (B[rows_nz] - np.outer(q, B[t])) % m
            # clear row t with column operations (only row t of B is affected)
            q = (B[t] // g) % m
            q[t] = 0
            if q.any():
                V = (V - np.outer(V[:, t], q)) % m
                Vinv[t] = (Vinv[t] + q @ Vinv) % m
                B[t] = 0
                B[t, t] = g
            diag.append(g)
            t += 1
        self._diag = diag + [0] * (n - len(diag))
        self._V = V
        self._Vinv = Vinv

    def _build_generators(self):
        m = self.modulus
        gens, orders, scale, keep = [], [], [], []
        for i, d in enumerate(self._diag):
            o = gcd(d, m)  # gcd(0, m) == m
            if o == 1:
                continue
            f = m // o
            free_vec = [(f * int(x)) % m for x in self._V[:, i]]
            gens.append(self._extend(free_vec))
            orders.append(o)
            scale.append(f)
            keep.append(i)
        self.generators = gens
        self.orders = orders
        self._scale = scale
        self._keep = keep

    def _extend(self, free_vec: Sequence[int]) -> list[int]:
        """Full solution from its values on the free columns (back-substitution)."""
        m = self.modulus
        x = [0] * self.ncols
        for k, j in enumerate(self._free):
            x[j] = free_vec[k]
        for j, inv, r in reversed(self._pivots):
            s = sum(v * x[j2] for j2, v in r.items() if j2 != j)
            x[j] = (-s * inv) % m
        return x

    def contains(self, x: Sequence[int]) -> bool:
        m = self.modulus
        return all(sum(v * x[j] for j, v in r.items()) % m == 0 for r in self.rows)

    def coordinates(self, x: Sequence[int], check: bool = True) -> list[int]:
        """Coefficients ``c`` with ``x = sum c[i] * generators[i]`` and ``0 <= c[i] < orders[i]``."""
        m = self.modulus
        if check and not self.contains(x):
            raise ExpressFailed("vector is not a solution of the system")
        xf = np.array([int(x[j]) % m for j in self._free], dtype=object)
        y = (self._Vinv.astype(object) @ xf) % m if len(xf) else np.zeros(0, dtype=object)
        out = []
        for i, f, o in zip(self._keep, self._scale, self.orders):
            yi = int(y[i])
            if yi % f:
                raise ExpressFailed("coordinate not divisible by the generator scale")
            out.append((yi // f) % o)
        return out

    @property
    def group(self) -> FGAbelian:
        return FGAbelian.from_orders(0, self.orders)


def sparse_matvec(rows: Sequence[Mapping[int, int]], x: Sequence[int], m: int) -> list[int]:
    return [sum(v * x[j] for j, v in r.items()) % m for r in rows]
