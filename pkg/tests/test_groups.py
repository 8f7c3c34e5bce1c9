import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ekedahl.errors import (
    BadParams,
    ClosureTooLarge,
    NoIdentity,
    NotAPermutation,
    NotAssociative,
    NotLatinSquare,
    UnknownName,
)
from ekedahl.groups import (
    builtin_group,
    centralizer,
    closure,
    compose,
    cyclic_group,
    dihedral_group,
    direct_product,
    group_from_permutations,
    group_from_table,
    heisenberg_group,
    maximal_abelian_subgroups,
    parse_group_spec,
    quaternion8,
    symmetric_group,
)
from oracles import all_subgroups, is_abelian_set


def s3_table_by_hand():
    perms = list(itertools.permutations(range(3)))
    return [[perms.index(compose(p, q)) for q in perms] for p in perms]


def test_order_two_table():
    G = group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.is_abelian and G.identity_index == 0


def test_repeated_entry_is_not_latin():
    with pytest.raises(NotLatinSquare):
        group_from_table([[0, 1], [1, 1]])


def test_s3_table():
    G = group_from_table(s3_table_by_hand())
    assert G.order == 6 and not G.is_abelian


def test_no_identity():
    # x*y = -x-y mod 3: a Latin square with no identity row
    with pytest.raises(NoIdentity):
        group_from_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_nonassociative_latin_square():
    # loop of order 5 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        group_from_table(table)


def test_permutation_groups():
    assert group_from_permutations([[1, 0]]).order == 2
    assert group_from_permutations([[1, 2, 0], [1, 0, 2]]).order == 6
    assert group_from_permutations([]).order == 1


def test_bad_permutation():
    with pytest.raises(NotAPermutation):
        group_from_permutations([[0, 0, 1]])
    with pytest.raises(NotAPermutation):
        group_from_permutations([[1, 0], [0, 2, 1]])


def test_closure_cap():
    with pytest.raises(ClosureTooLarge):
        group_from_permutations([[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]], cap=100)


def test_builtins():
    C4 = builtin_group("cyclic", [4])
    assert C4.order == 4 and C4.is_abelian and C4.element_order(1) == 4
    Q = builtin_group("quaternion8")
    assert Q.order == 8 and not Q.is_abelian
    H = builtin_group("heisenberg", [3])
    assert H.order == 27 and H.exponent() == 3 and not H.is_abelian
    assert builtin_group("dihedral", [4]).order == 8
    assert builtin_group("symmetric", [4]).order == 24
    assert builtin_group("elementary_abelian", [2, 3]).order == 8


def test_builtin_errors():
    with pytest.raises(UnknownName):
        builtin_group("alternating", [4])
    with pytest.raises(BadParams):
        builtin_group("heisenberg", [4])
    with pytest.raises(BadParams):
        builtin_group("cyclic", [])


def test_quaternion_relations():
    Q = quaternion8()
    x, y = 1, 4
    mul = Q.mul
    x2 = mul(x, x)
    assert mul(x2, x2) == Q.identity_index
    assert mul(y, y) == x2
    y_inv = Q.inverse(y)
    assert mul(mul(y_inv, x), y) == Q.inverse(x)


def test_group_spec():
    G = parse_group_spec("direct_product(cyclic(2), cyclic(4))")
    assert G.order == 8 and G.is_abelian
    assert parse_group_spec("symmetric(3)") == symmetric_group(3)
    with pytest.raises(BadParams):
        parse_group_spec("cyclic(2")


def test_fingerprint_is_table_hash():
    a = cyclic_group(6)
    b = group_from_table([list(r) for r in a.table])
    assert a.fingerprint == b.fingerprint and len(a.fingerprint) == 64
    assert a.fingerprint != cyclic_group(5).fingerprint


def test_centralizer_examples():
    S3 = symmetric_group(3)
    transposition = next(g for g in range(6) if S3.element_order(g) == 2)
    assert centralizer(S3, {transposition}).order == 2
    assert centralizer(S3, {S3.identity_index}).order == 6
    C6 = cyclic_group(6)
    assert centralizer(C6, {1, 2}).order == 6


def test_maximal_abelian_examples():
    C6 = cyclic_group(6)
    assert [A.order for A in maximal_abelian_subgroups(C6)] == [6]
    assert sorted(A.order for A in maximal_abelian_subgroups(quaternion8())) == [4, 4, 4]
    assert sorted(A.order for A in maximal_abelian_subgroups(symmetric_group(3))) == [2, 2, 2, 3]


SMALL = [
    symmetric_group(3), dihedral_group(4), quaternion8(), symmetric_group(4),
    dihedral_group(6), direct_product(symmetric_group(3), cyclic_group(2)),
    direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(1),
]


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_maximal_abelian_properties(G):
    maxes = maximal_abelian_subgroups(G)
    for A in maxes:
        assert A.is_abelian
        assert set(centralizer(G, A.member_indices).member_indices) == set(A.member_indices)
    for B in all_subgroups(G):
        if is_abelian_set(G, B):
            assert any(B <= set(A.member_indices) for A in maxes)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.permutations(list(range(5))), min_size=0, max_size=3))
def test_permutation_closure_revalidates(gens):
    G = group_from_permutations([list(g) for g in gens], degree=5)
    H = group_from_table([list(r) for r in G.table])
    assert H == G
    assert 120 % G.order == 0


def test_closure_of_generators():
    S4 = symmetric_group(4)
    assert len(closure(S4, [1])) == S4.element_order(1)


def test_heisenberg_multiplication():
    H = heisenberg_group(3)
    # element (a, b, c) at index 9a + 3b + c
    idx = lambda a, b, c: 9 * a + 3 * b + c
    assert H.mul(idx(1, 0, 0), idx(0, 1, 0)) == idx(1, 1, 1)
    assert H.mul(idx(0, 1, 0), idx(1, 0, 0)) == idx(1, 1, 0)
