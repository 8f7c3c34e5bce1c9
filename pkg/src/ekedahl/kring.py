"""Symbolic arithmetic in K0(Var)[L^-1] and its completion.

An element is a finite Z-combination of monomials ``X * L^e`` (X a product of
variety symbols, or the point) together with a precision ``tau``: the element
is known modulo ``Fil^tau``, the classes ``{X}/L^i`` with ``dim X - i <= tau``.
``tau = -inf`` means exact.  Terms whose virtual dimension ``dim X + e`` is at
most ``tau`` are absorbed into the unknown tail.

Symbols are opaque.  No scissor relation is ever applied; a decomposition such
as a blow-up relation is something the caller states and the library checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import NotAUnit, NotConverging

EXACT = -math.inf


@dataclass(frozen=True)
class GeneratorSymbol:
    """Class of a variety.  Product symbols carry their sorted factor list."""

    name: str
    dimension: int
    smooth_proper: bool = True
    table: object = field(default=None, compare=False, repr=False)
    factors: tuple["GeneratorSymbol", ...] = ()

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("dimension must be nonnegative")
        top = getattr(self.table, "top_degree", None)
        if top is not None and top > 2 * self.dimension:
            raise ValueError(f"table of {self.name} has degree {top} > 2*dim")

    @property
    def base_factors(self) -> tuple["GeneratorSymbol", ...]:
        return self.factors or (self,)

    def __str__(self):
        return self.name


def product_symbol(a: GeneratorSymbol, b: GeneratorSymbol) -> GeneratorSymbol:
    factors = tuple(sorted(a.base_factors + b.base_factors,
                           key=lambda s: (s.name, s.dimension)))
    return GeneratorSymbol(
        name="*".join(s.name for s in factors),
        dimension=sum(s.dimension for s in factors),
        smooth_proper=all(s.smooth_proper for s in factors),
        factors=factors,
    )


Monomial = tuple  # (GeneratorSymbol | None, exponent)


def _vdim(mono: Monomial) -> int:
    sym, e = mono
    return (sym.dimension if sym is not None else 0) + e


def _mono_key(mono: Monomial):
    sym, e = mono
    return (-_vdim(mono), "" if sym is None else sym.name, -e)


class KElement:
    """Precision-tracked element of the completed ring.  Immutable."""

    __slots__ = ("_terms", "_precision", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, precision=EXACT):
        self._precision = precision
        clean: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if c and _vdim(mono) > precision:
                clean[mono] = clean.get(mono, 0) + int(c)
        self._terms = {k: clean[k] for k in sorted(clean, key=_mono_key) if clean[k]}
        self._hash = None

    # constructors
    @classmethod
    def one(cls) -> "KElement":
        return cls({(None, 0): 1})

    @classmethod
    def zero(cls, precision=EXACT) -> "KElement":
        return cls({}, precision)

    @classmethod
    def lefschetz(cls, e: int = 1) -> "KElement":
        return cls({(None, int(e)): 1})

    @classmethod
    def integer(cls, n: int) -> "KElement":
        return cls({(None, 0): int(n)})

    @classmethod
    def symbol(cls, sym: GeneratorSymbol, e: int = 0) -> "KElement":
        return cls({(sym, int(e)): 1})

    # accessors
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    @property
    def precision(self):
        return self._precision

    @property
    def is_exact(self) -> bool:
        return self._precision == EXACT

    def is_zero(self) -> bool:
        return not self._terms

    def symbols(self) -> set[GeneratorSymbol]:
        return {sym for sym, _ in self._terms if sym is not None}

    def is_laurent_in_L(self) -> bool:
        return all(sym is None for sym, _ in self._terms)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return KElement(terms, max(self._precision, other._precision))

    __radd__ = __add__

    def __neg__(self):
        return KElement({m: -c for m, c in self._terms.items()}, self._precision)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return k_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("use k_invert_unit for negative powers")
        out = KElement.one()
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, tau) -> "KElement":
        """Forget everything in ``Fil^tau`` (never sharpens the precision)."""
        return KElement(self._terms, max(self._precision, tau))

    def congruent(self, other, tau) -> bool:
        """True when both elements are known modulo ``Fil^tau`` and agree there."""
        d = self - _coerce(other)
        return d.precision <= tau and all(_vdim(m) <= tau for m in d._terms)

    def fil_degree(self):
        return fil_degree(self)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms and self._precision == other._precision

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self._terms.items()), self._precision))
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"KElement({render(self)!r})"

    def to_json(self) -> dict:
        return {
            "text": render(self),
            "terms": [
                {"symbol": None if s is None else s.name, "exponent": e, "coefficient": c}
                for (s, e), c in self._terms.items()
            ],
            "precision": None if self.is_exact else int(self._precision),
        }


def _coerce(x):
    if isinstance(x, KElement):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return KElement.integer(x)
    return NotImplemented


def render(x: KElement) -> str:
    """Text form accepted back by the expression parser."""
    parts = []
    for (sym, e), c in x._terms.items():
        factors = []
        if sym is not None:
            factors.append(sym.name)
        if e:
            factors.append("L" if e == 1 else f"L^{e}")
        mag = abs(c)
        if not factors:
            tok = str(mag)
        elif mag == 1:
            tok = "*".join(factors)
        else:
            tok = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(tok if c > 0 else f"-{tok}")
        else:
            parts.append(("+ " if c > 0 else "- ") + tok)
    text = " ".join(parts) if parts else "0"
    if not x.is_exact:
        text += f" mod Fil({int(x.precision)})"
    return text


# ------------------------------------------------------------------ operations


def k_normalize(raw: Iterable[tuple[Monomial, int]] | Mapping[Monomial, int],
                tau=EXACT) -> KElement:
    """Merge a raw term list, dropping zeros and terms absorbed by ``Fil^tau``."""
    items = raw.items() if isinstance(raw, Mapping) else raw
    merged: dict[Monomial, int] = {}
    for mono, c in items:
        merged[mono] = merged.get(mono, 0) + int(c)
    return KElement(merged, tau)


def fil_degree(x: KElement):
    """Smallest n known to satisfy ``x in Fil^n`` (``-inf`` for exact zero)."""
    degs = [_vdim(m) for m in x._terms]
    if not x.is_exact:
        degs.append(x.precision)
    return max(degs) if degs else EXACT


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    (s, e), (t, f) = a, b
    if s is None:
        sym = t
    elif t is None:
        sym = s
    else:
        sym = product_symbol(s, t)
    return (sym, e + f)


def k_mul(x: KElement, y: KElement) -> KElement:
    """Product; the unknown tails contribute ``Fil`` of degree
    ``max(tau_x + deg y, tau_y + deg x, tau_x + tau_y)``."""
    dx = max((_vdim(m) for m in x._terms), default=EXACT)
    dy = max((_vdim(m) for m in y._terms), default=EXACT)
    tx, ty = x.precision, y.precision
    tau = max(tx + dy, ty + dx, tx + ty)
    terms: dict[Monomial, int] = {}
    for ma, ca in x._terms.items():
        for mb, cb in y._terms.items():
            if _vdim(ma) + _vdim(mb) <= tau:
                continue
            mono = _mono_mul(ma, mb)
            terms[mono] = terms.get(mono, 0) + ca * cb
    return KElement(terms, tau)


@lru_cache(maxsize=1024)
def _factor_unit(coeffs: tuple[tuple[int, int], ...]) -> tuple[int, int, tuple[int, ...]]:
    """Match ``sum c_e L^e`` against ``s * L^a * prod_j (L^n_j - 1)``.

    Returns ``(s, a, (n_1, n_2, ...))`` or raises :class:`NotAUnit`.
    """
    if not coeffs:
        raise NotAUnit("zero is not a unit")
    lo = min(e for e, _ in coeffs)
    poly = {e - lo: c for e, c in coeffs}
    deg = max(poly)
    c0 = poly.get(0, 0)
    if c0 not in (1, -1):
        raise NotAUnit("constant coefficient after removing L-powers is not +-1")
    # q = c0 * prod (1 - L^n)
    q = [0] * (deg + 1)
    for e, c in poly.items():
        q[e] = c * c0
    ns = []
    while len(q) > 1:
        k = next((i for i in range(1, len(q)) if q[i]), None)
        if k is None:
            break
        if q[k] > 0:
            raise NotAUnit("not a product of factors L^n - 1")
        # divide by (1 - L^k):  r[i] = q[i] + r[i-k]
        r = [0] * len(q)
        for i in range(len(q)):
            r[i] = q[i] + (r[i - k] if i >= k else 0)
        if any(r[i] for i in range(len(q) - k, len(q))):
            raise NotAUnit("not a product of factors L^n - 1")
        q = r[: len(q) - k]
        ns.append(k)
    if q != [1]:
        raise NotAUnit("not a product of factors L^n - 1")
    # prod (1 - L^n) = (-1)^r prod (L^n - 1)
    sign = c0 * (-1) ** len(ns)
    return sign, lo, tuple(sorted(ns))


def unit_factors(x: KElement) -> tuple[int, int, tuple[int, ...]]:
    """``(sign, a, ns)`` with ``x = sign * L^a * prod(L^n - 1)``."""
    if not x.is_exact:
        raise NotAUnit("only exact elements can be inverted")
    if not x.is_laurent_in_L():
        raise NotAUnit("unit recognition only covers Laurent polynomials in L")
    return _factor_unit(tuple(sorted((e, c) for (_, e), c in x._terms.items())))


def k_invert_unit(x: KElement, tau) -> KElement:
    """Inverse of ``+-L^a prod (L^n - 1)`` as a finite sum plus ``O(Fil^tau)``.

    Each factor is inverted through ``L^n - 1 = L^n (1 - L^-n)`` and the
    geometric series of ``L^-n``.
    """
    if tau == EXACT or not isinstance(tau, int) and not float(tau).is_integer():
        raise ValueError("a finite target precision is required")
    tau = int(tau)
    sign, a, ns = unit_factors(x)
    lead = -(a + sum(ns))
    if lead <= tau:
        return KElement.zero(tau)
    # series in L^-1 with exponents lead - k for k >= 0, keep lead - k > tau
    depth = lead - tau - 1
    series = [0] * (depth + 1)
    series[0] = sign
    for n in ns:
        for k in range(n, depth + 1):
            series[k] += series[k - n]
    return KElement({(None, lead - k): c for k, c in enumerate(series) if c}, tau)


def class_gl(n: int) -> KElement:
    """``{GL_n} = prod_{i<n} (L^n - L^i)``, expanded."""
    if n < 1:
        raise ValueError("n must be positive")
    out = KElement.one()
    for i in range(n):
        out = out * (KElement.lefschetz(n) - KElement.lefschetz(i))
    return out


def projective_space(n: int) -> KElement:
    """``{P^n} = 1 + L + ... + L^n``."""
    return KElement({(None, i): 1 for i in range(n + 1)})


def class_b_subgroup(w_class: KElement, quotient_class: KElement | None = None,
                     tau=-20) -> KElement:
    """Class of ``BW`` for a special group W (the inverse of ``{W}``), or of
    ``BH = {W/H} {BW}`` when the class of ``W/H`` is supplied."""
    if quotient_class is None:
        return k_invert_unit(w_class, tau)
    if not quotient_class.is_exact:
        raise ValueError("the class of W/H must be exact")
    if quotient_class.is_zero():
        return KElement.zero()
    # invert deeper so that the product is known exactly modulo Fil^tau
    bw = k_invert_unit(w_class, int(tau) - int(fil_degree(quotient_class)))
    return (quotient_class * bw).truncate(tau)


def quotient_stack_classes(bg: KElement, n: int, m: int) -> tuple[KElement, KElement]:
    """Classes of ``[V^m/G]`` and ``[P(V)/G]`` from ``{BG}`` for an n-dimensional V."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    affine = KElement.lefschetz(n * m) * bg
    proj = projective_space(n - 1) * bg
    return affine, proj


def limit_of_sequence(seq: Sequence[KElement]) -> KElement:
    """Limit of a sequence whose consecutive differences drop in filtration degree.

    Returns the last element known modulo ``Fil^d`` with d the filtration
    degree of the last difference.  Raises :class:`NotConverging` (with the
    offending index) when a difference fails to drop or precision gets worse.
    """
    if not seq:
        raise ValueError("empty sequence")
    prev_deg = math.inf
    last_deg = EXACT
    for i in range(1, len(seq)):
        if seq[i].precision > seq[i - 1].precision:
            raise NotConverging(i, f"element {i} is less precise than element {i - 1}")
        d = fil_degree(seq[i] - seq[i - 1])
        if d != EXACT and d >= prev_deg:
            raise NotConverging(i)
        if d == EXACT and prev_deg == EXACT:
            pass
        elif d == EXACT:
            prev_deg = EXACT
        else:
            prev_deg = d
        last_deg = d
    if prev_deg == EXACT and last_deg == EXACT:
        return seq[-1]
    return seq[-1].truncate(last_deg)
