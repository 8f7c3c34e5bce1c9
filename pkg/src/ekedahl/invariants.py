"""Ekedahl invariants e_i(G).

Low degrees are fixed: e_i = 0 for i < 0, e_0 = {Z}, e_1 = 0 and
e_2 = {B0(G)^dual}.  Higher degrees come from the triviality catalog, from
cohomology tables of a resolution of ``V^m/G``, or from window sums of a
resolved ``P(V)/H``.  Without any of those the answer is Unknown; nothing is
extrapolated.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .abelian import L0AbElement, ZERO_L0, Z_CLASS, l0_class_of, pontryagin_dual
from .cohomology import DEFAULT_ORDER_CAP, bogomolov_multiplier
from .errors import (
    BadFormat,
    DegreeOutOfRange,
    DimensionMismatch,
    Inconsistent,
    NegativeIndexNonzero,
)
from .groups import FiniteGroup
from .varieties import CohomologyTable

RESOLUTION_FORMAT = "resolution-v1"


class Provenance(str, enum.Enum):
    THEOREM_CONSTANT = "TheoremConstant"
    BOGOMOLOV_COROLLARY = "BogomolovCorollary"
    RESOLUTION_FORMULA = "ResolutionFormula"
    CATALOG = "Catalog"
    WINDOW_SOLVER = "WindowSolver"


class StabilizationWarning(UserWarning):
    """Resolution data uses fewer copies than the stabilization bound asks for."""


@dataclass(frozen=True)
class CatalogEntry:
    item: str
    statement: str


@dataclass(frozen=True)
class InvariantResult:
    """``value is None`` means Unknown."""

    value: L0AbElement | None
    provenance: Provenance | None
    certificate: CatalogEntry | None = None
    notes: tuple[str, ...] = ()

    @property
    def known(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        out = {
            "value": None if self.value is None else str(self.value),
            "provenance": None if self.provenance is None else self.provenance.value,
        }
        if self.certificate is not None:
            out["certificate"] = {"item": self.certificate.item,
                                  "statement": self.certificate.statement}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


UNKNOWN = InvariantResult(None, None)


@dataclass(frozen=True)
class ResolutionData:
    """``{V^m/G} = {X} + sum_j n_j {X_j}`` with X smooth proper of dimension m*n."""

    n: int
    m: int
    main: CohomologyTable
    extras: tuple[tuple[int, CohomologyTable], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "extras", tuple((int(c), t) for c, t in self.extras))
        if self.n < 1 or self.m < 1:
            raise DimensionMismatch("n and m must be positive")
        if self.main.dimension != self.m * self.n:
            raise DimensionMismatch(
                f"main table has dimension {self.main.dimension}, expected m*n = {self.m * self.n}")
        for c, t in self.extras:
            if t.dimension >= self.m * self.n:
                raise DimensionMismatch(
                    f"extra table of dimension {t.dimension} is not below m*n = {self.m * self.n}")

    def to_json(self) -> dict:
        return {
            "format": RESOLUTION_FORMAT,
            "n": self.n,
            "m": self.m,
            "main": self.main.to_json(),
            "extras": [{"coeff": c, "table": t.to_json()} for c, t in self.extras],
        }

    @classmethod
    def from_json(cls, data) -> "ResolutionData":
        try:
            if data.get("format", RESOLUTION_FORMAT) != RESOLUTION_FORMAT:
                raise BadFormat(f"expected format {RESOLUTION_FORMAT!r}, got {data.get('format')!r}")
            extras = [(int(x["coeff"]), CohomologyTable.from_json(x["table"]))
                      for x in data.get("extras", [])]
            return cls(int(data["n"]), int(data["m"]),
                       CohomologyTable.from_json(data["main"]), tuple(extras))
        except BadFormat:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise BadFormat(f"bad resolution data: {exc}") from exc


def load_resolution(path) -> ResolutionData:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadFormat(f"{path}: invalid JSON ({exc})") from exc
    return ResolutionData.from_json(data)


def m_bound(i: int, n: int) -> int:
    """Least m with ``floor(m/n) > i/2``: past it the Fil^(-floor(m/n)) error
    terms can no longer reach H^(-i)."""
    if i < 0 or n < 1:
        raise ValueError("need i >= 0 and n >= 1")
    return n * (i // 2 + 1)


def ekedahl_from_resolution(data: ResolutionData, i: int) -> L0AbElement:
    """``{H^(2mn-i)(X)} + sum_j n_j {H^(2mn-i)(X_j)}``."""
    degree = 2 * data.m * data.n - i
    if degree < 0:
        raise DegreeOutOfRange(f"degree 2mn - i = {degree} is negative")
    if i >= 0:
        need = m_bound(i, data.n)
        if data.m < need:
            warnings.warn(
                f"m = {data.m} is below the stabilization bound {need} for i = {i} "
                f"(short by {need - data.m})", StabilizationWarning, stacklevel=2)
    out = l0_class_of(data.main[degree])
    for c, t in data.extras:
        out = out + c * l0_class_of(t[degree])
    return out


# ------------------------------------------------------------------ catalog

SYMMETRIC = CatalogEntry("1", "symmetric groups have {BG} = 1")
SUBGROUP_GL1 = CatalogEntry("2", "finite subgroups of GL_1 (cyclic groups) have {BG} = 1")
SUBGROUP_GL3 = CatalogEntry("5", "finite subgroups of GL_3(C) have {BG} = 1 over C")
HEISENBERG_5 = CatalogEntry("heisenberg-5", "the Heisenberg group of order 125 has trivial invariants")


def catalog_lookup(G: FiniteGroup, *, assume_gl3: bool = False) -> CatalogEntry | None:
    """Triviality certificate by constructor provenance.

    No isomorphism testing: a hand-entered table isomorphic to S4 does not
    match.  ``assume_gl3`` is the caller's assertion that G embeds in GL_3(C).
    """
    prov = G.provenance or ()
    name = prov[0] if prov else None
    if name == "symmetric":
        return SYMMETRIC
    if name == "cyclic" or (name == "elementary_abelian" and prov[2] <= 1):
        return SUBGROUP_GL1
    if name == "dihedral":
        # rotations and a reflection of the plane: a subgroup of GL_2(C)
        return SUBGROUP_GL3
    if name == "heisenberg" and prov[1] == 5:
        return HEISENBERG_5
    if assume_gl3:
        return SUBGROUP_GL3
    return None


def catalog_annotation(G: FiniteGroup) -> str | None:
    prov = G.provenance or ()
    if prov and prov[0] == "heisenberg" and prov[1] != 5:
        return ("conjectural: the Heisenberg group of order p^3 is expected to have "
                "trivial invariants (not used as a value)")
    return None


# ------------------------------------------------------------ window solver


def solve_from_projective_sums(sums: Mapping[int, L0AbElement], n: int) -> dict[int, L0AbElement]:
    """Recover e_i from ``s_k = e_k + e_(k+2) + ... + e_(k+2(n-1))``.

    Runs ``e_(k+2(n-1)) = s_k - sum_{j<n-1} e_(k+2j)`` upward from
    ``k = -2(n-1)`` with e_i = 0 for i < 0, up to the last nonzero sum.
    Returns ``{i: e_i}`` for ``0 <= i <= last + 2(n-1)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    sums = {int(k): v for k, v in sums.items()}
    w = 2 * (n - 1)
    for k, v in sorted(sums.items()):
        if k < -w and v:
            raise NegativeIndexNonzero(k)
    support = [k for k, v in sums.items() if v]
    hi = max(support) if support else -w
    hi = max(hi, 1 - w)  # always determine e_0 and e_1
    e: dict[int, L0AbElement] = {}
    for k in range(-w, hi + 1):
        acc = sums.get(k, ZERO_L0)
        for j in range(n - 1):
            acc = acc - e.get(k + 2 * j, ZERO_L0)
        e[k + w] = acc
    if e[0] != Z_CLASS:
        raise Inconsistent(-w, f"window k={-w} forces e_0 = {e[0]}, expected Z")
    if e[1]:
        raise Inconsistent(1 - w, f"window k={1 - w} forces e_1 = {e[1]}, expected 0")
    return {i: v for i, v in sorted(e.items()) if i >= 0}


def projective_sums(e: Mapping[int, L0AbElement], n: int) -> dict[int, L0AbElement]:
    """Forward map: window sums of a finitely supported sequence."""
    if not e:
        return {}
    lo, hi = min(e) - 2 * (n - 1), max(e)
    out = {}
    for k in range(lo, hi + 1):
        s = ZERO_L0
        for j in range(n):
            s = s + e.get(k + 2 * j, ZERO_L0)
        if s:
            out[k] = s
    return out


# ---------------------------------------------------------------- dispatch


def ekedahl_invariant(G: FiniteGroup, i: int, data: ResolutionData | None = None, *,
                      window: tuple[Mapping[int, L0AbElement], int] | None = None,
                      assume_gl3: bool = False,
                      cap: int = DEFAULT_ORDER_CAP) -> InvariantResult:
    """e_i(G) with the route that produced it."""
    if i < 0:
        return InvariantResult(ZERO_L0, Provenance.THEOREM_CONSTANT)
    if i == 0:
        return InvariantResult(Z_CLASS, Provenance.THEOREM_CONSTANT)
    if i == 1:
        return InvariantResult(ZERO_L0, Provenance.THEOREM_CONSTANT)
    if i == 2:
        b0 = bogomolov_multiplier(G, cap=cap)
        return InvariantResult(l0_class_of(pontryagin_dual(b0)), Provenance.BOGOMOLOV_COROLLARY)
    cert = catalog_lookup(G, assume_gl3=assume_gl3)
    if cert is not None:
        return InvariantResult(ZERO_L0, Provenance.CATALOG, certificate=cert)
    note = catalog_annotation(G)
    notes = (note,) if note else ()
    if data is not None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", StabilizationWarning)
            value = ekedahl_from_resolution(data, i)
        notes += tuple(str(w.message) for w in caught)
        return InvariantResult(value, Provenance.RESOLUTION_FORMULA, notes=notes)
    if window is not None:
        sums, n = window
        solved = solve_from_projective_sums(sums, n)
        if i in solved:
            return InvariantResult(solved[i], Provenance.WINDOW_SOLVER, notes=notes)
    return InvariantResult(None, None, notes=notes)


def ekedahl_invariants(G: FiniteGroup, degrees: Sequence[int], data=None, **kw) -> dict[int, InvariantResult]:
    return {i: ekedahl_invariant(G, i, data, **kw) for i in degrees}
