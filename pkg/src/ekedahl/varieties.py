"""Integral cohomology tables of smooth proper varieties and the map
``H^k : classes -> L0(Ab)``.

``H^k({X} L^-m) = {H^(k+2m)(X, Z)}``, extended additively.  Blow-ups and
their exceptional divisors get their tables from the projective bundle
decomposition, so the scissor relation ``{X} + {E} = {Bl} + {Y}`` can be
checked on the level of tables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .abelian import FGAbelian, L0AbElement, ZERO_L0, l0_class_of
from .errors import (
    BadFormat,
    DimensionMismatch,
    HasTorsion,
    InsufficientPrecision,
    MissingTable,
)
from .kring import GeneratorSymbol, KElement

TABLE_FORMAT = "cohomology-v1"


@dataclass(frozen=True)
class CohomologyTable:
    dimension: int
    groups: Mapping[int, FGAbelian] = field(default_factory=dict)
    connected: bool = False

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("dimension must be nonnegative")
        clean = {}
        for k, A in dict(self.groups).items():
            k = int(k)
            if not 0 <= k <= 2 * self.dimension:
                raise ValueError(f"degree {k} outside [0, {2 * self.dimension}]")
            if not A.is_trivial:
                clean[k] = A
        object.__setattr__(self, "groups", dict(sorted(clean.items())))
        if self.connected and self.groups.get(0, FGAbelian()).rank < 1:
            raise ValueError("a connected variety has H^0 of rank at least 1")

    def __getitem__(self, k: int) -> FGAbelian:
        return self.groups.get(k, FGAbelian())

    def __hash__(self):
        return hash((self.dimension, tuple(self.groups.items())))

    @property
    def top_degree(self) -> int | None:
        return max(self.groups) if self.groups else None

    @property
    def torsion_free(self) -> bool:
        return all(A.torsion_free for A in self.groups.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * A.rank for k, A in self.groups.items())

    def poincare_lint(self) -> list[int]:
        """Degrees whose rank differs from the rank in the complementary degree."""
        n2 = 2 * self.dimension
        return [k for k in range(n2 + 1) if self[k].rank != self[n2 - k].rank]

    def to_json(self) -> dict:
        return {
            "format": TABLE_FORMAT,
            "dim": self.dimension,
            "groups": {str(k): A.to_json() for k, A in self.groups.items()},
        }

    @classmethod
    def from_json(cls, data) -> "CohomologyTable":
        try:
            if data.get("format", TABLE_FORMAT) != TABLE_FORMAT:
                raise BadFormat(f"expected format {TABLE_FORMAT!r}, got {data.get('format')!r}")
            groups = {}
            for k, entry in data.get("groups", {}).items():
                groups[int(k)] = FGAbelian.from_orders(int(entry.get("rank", 0)),
                                                       entry.get("torsion", []))
            return cls(int(data["dim"]), groups)
        except BadFormat:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise BadFormat(f"bad cohomology table: {exc}") from exc


def load_table(path) -> CohomologyTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadFormat(f"{path}: invalid JSON ({exc})") from exc
    return CohomologyTable.from_json(data)


def _shifted_sum(parts) -> dict[int, FGAbelian]:
    out: dict[int, FGAbelian] = {}
    for shift, table in parts:
        for k, A in table.groups.items():
            out[k + shift] = out.get(k + shift, FGAbelian()).direct_sum(A)
    return out


POINT_TABLE = CohomologyTable(0, {0: FGAbelian(1)}, connected=True)


def table_projective_space(n: int) -> CohomologyTable:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return CohomologyTable(n, {2 * i: FGAbelian(1) for i in range(n + 1)}, connected=True)


def table_blowup(x: CohomologyTable, y: CohomologyTable,
                 d: int) -> tuple[CohomologyTable, CohomologyTable]:
    """Tables of the blow-up of X along Y (codimension d) and of its exceptional divisor.

    ``H^k(Bl) = H^k(X) + sum_{i=1}^{d-1} H^(k-2i)(Y)`` and
    ``H^k(E) = sum_{i=0}^{d-1} H^(k-2i)(Y)``.
    """
    if d < 1:
        raise DimensionMismatch("codimension must be at least 1")
    if y.dimension + d != x.dimension:
        raise DimensionMismatch(
            f"dim Y + d = {y.dimension} + {d} does not equal dim X = {x.dimension}")
    bl = CohomologyTable(x.dimension, _shifted_sum([(0, x)] + [(2 * i, y) for i in range(1, d)]))
    e = CohomologyTable(x.dimension - 1, _shifted_sum([(2 * i, y) for i in range(d)]))
    return bl, e


def table_product_torsion_free(a: CohomologyTable, b: CohomologyTable) -> CohomologyTable:
    """Kunneth for torsion-free tables."""
    if not (a.torsion_free and b.torsion_free):
        raise HasTorsion("Kunneth with torsion is not supported; supply the product's table directly")
    ranks: dict[int, int] = {}
    for i, A in a.groups.items():
        for j, B in b.groups.items():
            ranks[i + j] = ranks.get(i + j, 0) + A.rank * B.rank
    return CohomologyTable(a.dimension + b.dimension,
                           {k: FGAbelian(r) for k, r in ranks.items()})


def table_of(sym: GeneratorSymbol | None) -> CohomologyTable:
    """Table attached to a symbol; product symbols are derived factorwise."""
    if sym is None:
        return POINT_TABLE
    if not sym.smooth_proper:
        raise MissingTable(sym.name, f"{sym.name} is not marked smooth and proper")
    if sym.table is not None:
        return sym.table
    if sym.factors:
        out = POINT_TABLE
        for f in sym.factors:
            out = table_product_torsion_free(out, table_of(f))
        return out
    raise MissingTable(sym.name)


def h_k(x: KElement, k: int) -> L0AbElement:
    """``{H^k}`` of a precision-tracked class.  Needs ``k > 2 * precision``."""
    if not x.is_exact and k <= 2 * x.precision:
        raise InsufficientPrecision(k, x.precision)
    out = ZERO_L0
    for (sym, e), c in x.terms.items():
        A = table_of(sym)[k - 2 * e]
        if not A.is_trivial:
            out = out + c * l0_class_of(A)
    return out


def h_range(x: KElement) -> range:
    """Degrees in which ``h_k(x)`` can be nonzero (and is defined)."""
    lo_terms = [-2 * e for (_, e) in x.terms]
    hi_terms = [2 * ((s.dimension if s else 0) - e) for (s, e) in x.terms]
    if not lo_terms:
        return range(0)
    lo = min(lo_terms)
    if not x.is_exact:
        lo = max(lo, 2 * int(x.precision) + 1)
    return range(lo, max(hi_terms) + 1)
