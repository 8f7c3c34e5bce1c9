"""Finite groups as multiplication tables.

A :class:`FiniteGroup` stores its Cayley table on element indices.  Groups are
built from a table (validated), from permutation generators (closed under
composition), or from the small catalog in :func:`builtin_group`.  Element
orderings are fixed per constructor, so fingerprints are stable across runs.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadParams,
    ClosureTooLarge,
    NoIdentity,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    UnknownName,
)

DEFAULT_CLOSURE_CAP = 4096


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the indices ``0 .. order-1``.

    ``table[a][b]`` is the index of the product ``a*b``.  ``provenance`` records
    which catalog constructor produced the group (``None`` for user input); it
    is what the triviality catalog matches on.
    """

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    identity_index: int
    provenance: tuple | None = field(default=None)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity_index
        return tuple(row.index(e) for row in self.table)

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def fingerprint(self) -> str:
        """Hex SHA-256 of the canonical table serialization."""
        payload = json.dumps([list(r) for r in self.table], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.array, self.array.T))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity_index:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(a) for a in range(self.order)))

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table and self.identity_index == other.identity_index

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        label = _provenance_label(self.provenance) if self.provenance else "table"
        return f"FiniteGroup({label}, order={self.order})"

    def to_json(self) -> dict:
        return {
            "format": "group-table-v1",
            "names": list(self.names),
            "table": [list(r) for r in self.table],
        }


def _provenance_label(prov) -> str:
    name, *params = prov
    inner = ", ".join(
        _provenance_label(p) if isinstance(p, tuple) else str(p) for p in params
    )
    return f"{name}({inner})" if params else name


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    member_indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.member_indices)

    def __contains__(self, g: int) -> bool:
        return g in self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.member_indices)

    def issubset(self, other: "Subgroup") -> bool:
        return self._members <= other._members

    @cached_property
    def is_abelian(self) -> bool:
        t = self.parent.table
        return all(
            t[a][b] == t[b][a]
            for a, b in itertools.combinations(self.member_indices, 2)
        )

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group; element k is ``member_indices[k]``."""
        pos = {g: k for k, g in enumerate(self.member_indices)}
        t = self.parent.table
        table = tuple(
            tuple(pos[t[a][b]] for b in self.member_indices) for a in self.member_indices
        )
        names = tuple(self.parent.names[g] for g in self.member_indices)
        return FiniteGroup(table, names, pos[self.parent.identity_index])

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.member_indices)})"


# ---------------------------------------------------------------- constructors


def group_from_table(table, names: Sequence[str] | None = None, *, provenance=None) -> FiniteGroup:
    """Validate a Cayley table and wrap it.

    Raises :class:`NotLatinSquare`, :class:`NoIdentity` or :class:`NotAssociative`
    naming the offending row/column or triple.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise NotLatinSquare("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotLatinSquare(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise NotLatinSquare(f"entry ({i},{j}) is not an integer: {v!r}")
            if not 0 <= v < n:
                raise NotLatinSquare(f"entry ({i},{j}) = {v} out of range 0..{n - 1}")
    arr = np.array(rows, dtype=np.int64)
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), full):
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(arr[:, i]), full):
            raise NotLatinSquare(f"column {i} is not a permutation of 0..{n - 1}")

    ident = [
        e for e in range(n)
        if np.array_equal(arr[e], full) and np.array_equal(arr[:, e], full)
    ]
    if not ident:
        raise NoIdentity("no element acts as a two-sided identity")
    e = ident[0]

    # (ab)c == a(bc), chunked over a to bound memory
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, n, chunk):
        a = slice(start, min(n, start + chunk))
        left = arr[arr[a]]          # left[i, b, c] = (a_i b) c
        right = arr[a][:, arr]      # right[i, b, c] = a_i (b c)
        bad = np.argwhere(left != right)
        if bad.size:
            i, b, c = (int(x) for x in bad[0])
            raise NotAssociative(f"triple ({start + i}, {b}, {c}) is not associative")

    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise NotLatinSquare(f"{len(names)} names given for {n} elements")
    return FiniteGroup(tuple(tuple(int(v) for v in r) for r in rows), names, e, provenance)


def _check_permutations(generators) -> list[tuple[int, ...]]:
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        return gens
    k = len(gens[0])
    for idx, g in enumerate(gens):
        if len(g) != k:
            raise NotAPermutation(f"generator {idx} has degree {len(g)}, expected {k}")
        if sorted(g) != list(range(k)):
            raise NotAPermutation(f"generator {idx} is not a permutation of 0..{k - 1}")
    return gens


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``(p*q)(i) = p(q(i))``: apply ``q`` first."""
    return tuple(p[i] for i in q)


def permutation_closure(generators, degree: int | None = None,
                        cap: int = DEFAULT_CLOSURE_CAP) -> list[tuple[int, ...]]:
    """Elements of the generated group in breadth-first order from the identity."""
    gens = _check_permutations(generators)
    if degree is None:
        degree = len(gens[0]) if gens else 0
    elif gens and len(gens[0]) != degree:
        raise NotAPermutation(f"generators have degree {len(gens[0])}, expected {degree}")
    identity = tuple(range(degree))
    seen = {identity: 0}
    order = [identity]
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(g, s)
            if h not in seen:
                if len(order) >= cap:
                    raise ClosureTooLarge(f"closure exceeds the order cap {cap}")
                seen[h] = len(order)
                order.append(h)
                queue.append(h)
    return order


def _table_from_elements(elements, mul) -> list[list[int]]:
    pos = {x: i for i, x in enumerate(elements)}
    return [[pos[mul(a, b)] for b in elements] for a in elements]


def group_from_permutations(generators, degree: int | None = None,
                            cap: int = DEFAULT_CLOSURE_CAP, *, provenance=None) -> FiniteGroup:
    elements = permutation_closure(generators, degree, cap)
    table = _table_from_elements(elements, compose)
    names = ["(" + " ".join(map(str, p)) + ")" for p in elements]
    return group_from_table(table, names, provenance=provenance)


# ------------------------------------------------------------------- catalog


def _int_param(params, count, name):
    if len(params) != count:
        raise BadParams(f"{name} takes {count} integer parameter(s), got {len(params)}")
    out = []
    for p in params:
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise BadParams(f"{name}: parameter {p!r} is not an integer")
        out.append(int(p))
    return out


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def cyclic_group(n: int) -> FiniteGroup:
    elements = list(range(n))
    table = [[(a + b) % n for b in elements] for a in elements]
    names = ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return group_from_table(table, names, provenance=("cyclic", n))


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element ``r^k s^f`` has index ``f*n + k``."""
    elements = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(x, y):
        (a, f), (b, g) = x, y
        return ((a + (-1) ** f * b) % n, (f + g) % 2)

    names = [("e" if (k, f) == (0, 0) else ("r^%d" % k if k else "") + ("s" if f else ""))
             for k, f in elements]
    return group_from_table(_table_from_elements(elements, mul), names,
                            provenance=("dihedral", n))


def symmetric_group(n: int) -> FiniteGroup:
    """All permutations of ``range(n)`` in lexicographic order."""
    elements = list(itertools.permutations(range(n)))
    names = ["(" + " ".join(map(str, p)) + ")" for p in elements]
    return group_from_table(_table_from_elements(elements, compose), names,
                            provenance=("symmetric", n))


def quaternion8() -> FiniteGroup:
    """<x, y | x^4 = 1, x^2 = y^2, y^-1 x y = x^-1>; ``x^a y^b`` has index ``4b + a``."""
    elements = [(a, b) for b in (0, 1) for a in range(4)]

    def mul(u, v):
        (a, b), (c, d) = u, v
        e = a + (-1) ** b * c
        if b + d == 2:
            e += 2
        return (e % 4, (b + d) % 2)

    names = ["1", "x", "x^2", "x^3", "y", "xy", "x^2y", "x^3y"]
    return group_from_table(_table_from_elements(elements, mul), names,
                            provenance=("quaternion8",))


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    elements = list(itertools.product(range(p), repeat=k))

    def mul(u, v):
        return tuple((a + b) % p for a, b in zip(u, v))

    names = ["(" + ",".join(map(str, v)) + ")" for v in elements]
    return group_from_table(_table_from_elements(elements, mul), names,
                            provenance=("elementary_abelian", p, k))


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p, ``(a, b, c)`` in lexicographic order.

    ``(a, b, c)`` stands for the matrix with a, b on the superdiagonal and c in
    the corner, so ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``.
    """
    elements = list(itertools.product(range(p), repeat=3))

    def mul(u, v):
        (a, b, c), (x, y, z) = u, v
        return ((a + x) % p, (b + y) % p, (c + z + a * y) % p)

    names = ["[%d,%d,%d]" % v for v in elements]
    return group_from_table(_table_from_elements(elements, mul), names,
                            provenance=("heisenberg", p))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ``(i, j)`` at index ``i*|h| + j``."""
    n, m = g.order, h.order
    table = [
        [g.table[i1][i2] * m + h.table[j1][j2] for i2 in range(n) for j2 in range(m)]
        for i1 in range(n) for j1 in range(m)
    ]
    names = [f"({a},{b})" for a in g.names for b in h.names]
    prov = ("direct_product", g.provenance or ("table",), h.provenance or ("table",))
    return group_from_table(table, names, provenance=prov)


BUILTIN_NAMES = (
    "cyclic", "dihedral", "symmetric", "quaternion8",
    "elementary_abelian", "heisenberg", "direct_product",
)


def builtin_group(name: str, params: Iterable = ()) -> FiniteGroup:
    """Catalog constructor: ``builtin_group("symmetric", [4])`` and friends.

    ``direct_product`` takes two :class:`FiniteGroup` parameters.
    """
    params = list(params)
    if name == "cyclic":
        (n,) = _int_param(params, 1, name)
        if n < 1:
            raise BadParams("cyclic: n must be >= 1")
        return cyclic_group(n)
    if name == "dihedral":
        (n,) = _int_param(params, 1, name)
        if n < 1:
            raise BadParams("dihedral: n must be >= 1")
        return dihedral_group(n)
    if name == "symmetric":
        (n,) = _int_param(params, 1, name)
        if not 1 <= n <= 7:
            raise BadParams("symmetric: n must be in 1..7")
        return symmetric_group(n)
    if name == "quaternion8":
        _int_param(params, 0, name)
        return quaternion8()
    if name == "elementary_abelian":
        p, k = _int_param(params, 2, name)
        if not _is_prime(p) or k < 0:
            raise BadParams("elementary_abelian: need p prime and k >= 0")
        return elementary_abelian(p, k)
    if name == "heisenberg":
        (p,) = _int_param(params, 1, name)
        if not _is_prime(p):
            raise BadParams("heisenberg: p must be prime")
        return heisenberg_group(p)
    if name == "direct_product":
        if len(params) != 2 or not all(isinstance(x, FiniteGroup) for x in params):
            raise BadParams("direct_product takes two FiniteGroup parameters")
        return direct_product(*params)
    raise UnknownName(f"unknown group {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def parse_group_spec(text: str) -> FiniteGroup:
    """Parse catalog syntax such as ``symmetric(4)`` or
    ``direct_product(cyclic(2), cyclic(4))``."""
    pos = 0
    s = text.replace(" ", "")

    def ident():
        nonlocal pos
        start = pos
        while pos < len(s) and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        if start == pos:
            raise BadParams(f"expected a group name at position {start} in {text!r}")
        return s[start:pos]

    def spec():
        nonlocal pos
        name = ident()
        args = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            while True:
                if pos < len(s) and (s[pos].isdigit() or s[pos] == "-"):
                    start = pos
                    pos += 1
                    while pos < len(s) and s[pos].isdigit():
                        pos += 1
                    args.append(int(s[start:pos]))
                else:
                    args.append(spec())
                if pos < len(s) and s[pos] == ",":
                    pos += 1
                    continue
                if pos < len(s) and s[pos] == ")":
                    pos += 1
                    break
                raise BadParams(f"malformed group spec {text!r}")
        return builtin_group(name, args)

    g = spec()
    if pos != len(s):
        raise BadParams(f"trailing characters in group spec {text!r}")
    return g


# ----------------------------------------------------------------- subgroups


def closure(G: FiniteGroup, elements: Iterable[int]) -> frozenset[int]:
    """Subgroup generated by ``elements`` (finite, so products suffice)."""
    t = G.table
    members = {G.identity_index}
    gens = [g for g in set(elements) if g != G.identity_index]
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = t[x][s]
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return frozenset(members)


def subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(sorted(closure(G, elements))))


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    t = G.table
    S = list(S)
    members = tuple(g for g in range(G.order) if all(t[g][s] == t[s][g] for s in S))
    return Subgroup(G, members)


def maximal_abelian_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Abelian subgroups A with ``centralizer(G, A) == A``.

    Depth-first growth from cyclic seeds: an abelian A extends by any element of
    its centralizer outside A, and A is maximal exactly when none is left.
    Visited member sets are memoized.
    """
    found: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()
    stack = [closure(G, [g]) for g in range(G.order)]
    while stack:
        A = stack.pop()
        if A in visited:
            continue
        visited.add(A)
        C = centralizer(G, A)
        extra = [g for g in C.member_indices if g not in A]
        if not extra:
            found.add(A)
            continue
        for g in extra:
            B = closure(G, A | {g})
            if B not in visited:
                stack.append(B)
    result = [Subgroup(G, tuple(sorted(A))) for A in found]
    result.sort(key=lambda H: (H.order, H.member_indices))
    return result
