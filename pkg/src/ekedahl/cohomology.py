"""H^2(G, C*) through the normalized bar complex, and the Bogomolov multiplier.

For a finite group G and m a multiple of |G|, the coefficient sequence
``1 -> mu_m -> C* --(x -> x^m)--> C* -> 1`` gives

    H^2(G, C*)  =  H^2(G, Z/m) / Bockstein(Hom(G, Z/m)),

because multiplication by m kills the |G|-torsion group H^2(G, C*).  Every
character of G takes values in mu_|G|, hence lifts to Z/m.  The Bockstein of a
character chi is ``c(g, h) = (x(g) + x(h) - x(gh)) / m`` where x lifts chi to
``[0, m)``.  Subgroups are treated with the same modulus m = |G|, so
restriction of classes is literal restriction of cochains.

Cochains are normalized (they vanish when an argument is the identity) and are
indexed by tuples of non-identity elements in increasing index order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .abelian import (
    FGAbelian,
    ModularKernel,
    PresentedAbelian,
    direct_sum_all,
    kernel_of_presented_hom,
    smith_form,
)
from .errors import CapExceeded, ExpressFailed, NotAHomomorphism
from .groups import FiniteGroup, Subgroup, maximal_abelian_subgroups

DEFAULT_ORDER_CAP = 64


def nonidentity(G: FiniteGroup) -> list[int]:
    return [g for g in range(G.order) if g != G.identity_index]


def cochain_index(G: FiniteGroup, k: int) -> dict[tuple[int, ...], int]:
    """Position of each normalized k-cochain coordinate."""
    ne = nonidentity(G)
    return {t: i for i, t in enumerate(itertools.product(ne, repeat=k))}


def coboundary_rows(G: FiniteGroup, k: int, m: int) -> list[dict[int, int]]:
    """Sparse rows of the normalized coboundary C^k -> C^(k+1) over Z/m.

    Row order follows ``cochain_index(G, k + 1)``; column order follows
    ``cochain_index(G, k)``.  Convention::

        (df)(g1..g_{k+1}) = f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                            + (-1)^(k+1) f(g1..gk)
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    t = G.table
    e = G.identity_index
    col = cochain_index(G, k)
    rows = []
    for args in itertools.product(nonidentity(G), repeat=k + 1):
        row: dict[int, int] = {}

        def add(key, sign):
            if e in key:
                return
            j = col[key]
            row[j] = row.get(j, 0) + sign

        add(args[1:], 1)
        for i in range(k):
            merged = args[:i] + (t[args[i]][args[i + 1]],) + args[i + 2:]
            add(merged, (-1) ** (i + 1))
        add(args[:k], (-1) ** (k + 1))
        rows.append({j: v % m for j, v in row.items() if v % m})
    return rows


def coboundary_matrix(G: FiniteGroup, k: int, m: int) -> list[list[int]]:
    """Dense matrix of the coboundary C^k -> C^(k+1), shape ``(|G|-1)^(k+1) x (|G|-1)^k``,
    entries in ``[0, m)``."""
    if k not in (1, 2):
        raise ValueError("only degrees 1 and 2 are supported")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    ncols = (G.order - 1) ** k
    out = []
    for r in coboundary_rows(G, k, m):
        row = [0] * ncols
        for j, v in r.items():
            row[j] = v
        out.append(row)
    return out


def is_homomorphism(G: FiniteGroup, chi: Sequence[int], m: int) -> bool:
    t = G.table
    n = G.order
    return all((chi[a] + chi[b] - chi[t[a][b]]) % m == 0 for a in range(n) for b in range(n))


def bockstein_cocycle(G: FiniteGroup, chi: Sequence[int], m: int | None = None) -> list[int]:
    """Normalized 2-cochain ``c(g,h) = (x(g) + x(h) - x(gh)) / m mod m``.

    ``chi`` lists the character's values in Z/m on all elements, by index.
    """
    m = G.order if m is None else m
    if len(chi) != G.order:
        raise ValueError("chi must give one value per group element")
    x = [int(v) % m for v in chi]
    if not is_homomorphism(G, x, m):
        raise NotAHomomorphism("chi is not a homomorphism G -> Z/m")
    t = G.table
    ne = nonidentity(G)
    return [((x[g] + x[h] - x[t[g][h]]) // m) % m for g in ne for h in ne]


@dataclass
class H2Presentation:
    """H^2(G, C*) as ``Z/orders[0] + ... + Z/orders[-1]``.

    ``cocycle_reps[i]`` is a Z/m-valued normalized 2-cocycle representing the
    i-th cyclic generator.  Generators come out of the Smith form of the
    relation matrix and are therefore reproducible.
    """

    group: FiniteGroup
    modulus: int
    orders: list[int]
    cocycle_reps: list[list[int]]
    _cocycles: ModularKernel
    _transform: list[list[int]]       # raw Z^2 coordinates -> canonical coordinates
    _kept: list[int]

    @property
    def fingerprint(self) -> str:
        return self.group.fingerprint

    @property
    def presentation(self) -> PresentedAbelian:
        return PresentedAbelian.diagonal(self.orders)

    @property
    def abelian(self) -> FGAbelian:
        return FGAbelian.from_orders(0, self.orders)

    def express(self, cochain: Sequence[int]) -> list[int]:
        """Coordinates of the class of a 2-cocycle in the canonical generators."""
        raw = self._cocycles.coordinates(cochain)
        out = []
        for i, o in zip(self._kept, self.orders):
            out.append(sum(u * c for u, c in zip(self._transform[i], raw)) % o)
        return out


def _characters(G: FiniteGroup, m: int) -> list[list[int]]:
    """Generators of Hom(G, Z/m) as full value lists."""
    ker = ModularKernel(coboundary_rows(G, 1, m), G.order - 1, m)
    ne = nonidentity(G)
    out = []
    for v in ker.generators:
        chi = [0] * G.order
        for g, val in zip(ne, v):
            chi[g] = val
        out.append(chi)
    return out


@lru_cache(maxsize=256)
def _h2_cached(G: FiniteGroup, m: int) -> H2Presentation:
    n1 = G.order - 1
    cocycles = ModularKernel(coboundary_rows(G, 2, m), n1 * n1, m)
    k = len(cocycles.orders)
    relations: list[list[int]] = []
    for i, o in enumerate(cocycles.orders):
        col = [0] * k
        col[i] = o
        relations.append(col)
    # coboundaries: images of the basis cochains of C^1
    d1 = coboundary_rows(G, 1, m)
    images = [[0] * (n1 * n1) for _ in range(n1)]
    for r, row in enumerate(d1):
        for j, v in row.items():
            images[j][r] = v
    for img in images:
        relations.append(cocycles.coordinates(img, check=False))
    for chi in _characters(G, m):
        relations.append(cocycles.coordinates(bockstein_cocycle(G, chi, m)))

    if k == 0:
        return H2Presentation(G, m, [], [], cocycles, [], [])
    R = [[col[i] for col in relations] for i in range(k)]
    s = smith_form(R, len(relations))
    diag = s.diagonal + [0] * (k - len(s.diagonal))
    if any(d == 0 for d in diag):
        raise ExpressFailed("H^2(G, Z/m) modulo Bocksteins came out infinite")
    kept = [i for i, d in enumerate(diag) if d != 1]
    orders = [diag[i] for i in kept]
    reps = []
    for i in kept:
        # new generator i is column i of U^-1 in the raw cocycle basis
        coeffs = [s.Uinv[j][i] for j in range(k)]
        vec = [0] * (n1 * n1)
        for c, gen in zip(coeffs, cocycles.generators):
            if c:
                for idx, val in enumerate(gen):
                    if val:
                        vec[idx] = (vec[idx] + c * val) % m
        reps.append(vec)
    return H2Presentation(G, m, orders, reps, cocycles, s.U, kept)


def h2_units(G: FiniteGroup, modulus: int | None = None,
             cap: int = DEFAULT_ORDER_CAP) -> H2Presentation:
    """Presentation of H^2(G, C*) computed with coefficients Z/modulus (default |G|)."""
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds the order cap {cap}")
    m = G.order if modulus is None else int(modulus)
    if m % G.order:
        raise ValueError("the modulus must be a multiple of |G|")
    if G.order == 1:
        return H2Presentation(G, m, [], [], ModularKernel([], 0, m), [], [])
    return _h2_cached(G, m)


def restrict_cochain(G: FiniteGroup, A: Subgroup, cochain: Sequence[int]) -> list[int]:
    """Restriction of a normalized 2-cochain of G to ``A.as_group()``'s indexing."""
    idx = cochain_index(G, 2)
    members = [g for g in A.member_indices if g != G.identity_index]
    return [cochain[idx[(a, b)]] for a in members for b in members]


def restriction_matrix(G: FiniteGroup, A: Subgroup, hG: H2Presentation,
                       hA: H2Presentation) -> list[list[int]]:
    """Matrix (hA gens x hG gens) of restriction H^2(G, C*) -> H^2(A, C*)."""
    if hG.modulus != hA.modulus:
        raise ValueError("both presentations must use the same modulus")
    cols = [hA.express(restrict_cochain(G, A, rep)) for rep in hG.cocycle_reps]
    return [[col[i] for col in cols] for i in range(len(hA.orders))]


def bogomolov_multiplier(G: FiniteGroup, *, subgroups: Sequence[Subgroup] | None = None,
                         cap: int = DEFAULT_ORDER_CAP) -> FGAbelian:
    """B0(G): classes of H^2(G, C*) restricting to zero on every abelian subgroup.

    By default the intersection runs over maximal abelian subgroups only, which
    gives the same kernel since restriction factors through inclusions.
    """
    hG = h2_units(G, cap=cap)
    if not hG.orders:
        return FGAbelian()
    if subgroups is None:
        subgroups = maximal_abelian_subgroups(G)
    m = hG.modulus
    blocks, cods = [], []
    for A in subgroups:
        hA = h2_units(A.as_group(), modulus=m, cap=max(cap, G.order))
        if not hA.orders:
            continue
        blocks.extend(restriction_matrix(G, A, hG, hA))
        cods.append(hA.presentation)
    cod = direct_sum_all(cods)
    return kernel_of_presented_hom(hG.presentation, cod, blocks)
