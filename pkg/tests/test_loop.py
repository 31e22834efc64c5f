import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from moufang.catalog import builtin, cyclic
from moufang.errors import NoIdentity, NotLatin, NotNormal
from moufang.loop import (
    LoopTable,
    associator,
    associator_subloop,
    center,
    commutator,
    coset_partition,
    direct_product,
    element_orders,
    enumerate_normal_subloops,
    enumerate_subloops,
    is_normal,
    is_power_associative,
    nucleus,
    order_statistics,
    quotient,
    relabel,
    restrict,
    squares,
    subloop_generated,
    validate_table,
)

from conftest import small_loops


def brute_associator(L, x, y, z):
    T = L.table
    lhs = T[T[x, y], z]
    rhs = T[x, T[y, z]]
    return next(w for w in range(L.order) if T[rhs, w] == lhs)


def test_rejects_non_latin():
    with pytest.raises(NotLatin):
        LoopTable([[0, 1], [1, 1]])
    with pytest.raises(NotLatin):
        LoopTable([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(NotLatin):
        LoopTable([[0, 5], [1, 0]])


def test_rejects_missing_identity():
    with pytest.raises(NoIdentity):
        validate_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])


def test_validate_moves_identity_to_zero():
    # Z/3 written with identity at index 2
    raw = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    L = validate_table(raw)
    assert (L.table[0] == np.arange(3)).all()
    assert L.is_associative and L.is_commutative


def test_divisions_and_inverses(loops):
    for L in loops.values():
        T = L.table
        n = L.order
        x = np.arange(n)[:, None]
        y = np.arange(n)[None, :]
        assert (T[x, L.ldiv[x, y]] == np.broadcast_to(y, (n, n))).all()
        assert (T[L.rdiv[x, y], y] == np.broadcast_to(x, (n, n))).all()
        assert (T[np.arange(n), L.right_inverse] == 0).all()
        assert (T[L.left_inverse, np.arange(n)] == 0).all()


def test_associators_match_definition():
    L = builtin("o16")
    for x, y, z in itertools.product(range(L.order), repeat=3):
        if (x * 7 + y * 3 + z) % 11:
            continue
        assert L.associators[x, y, z] == associator(L, x, y, z) == brute_associator(L, x, y, z)


def test_commutator_definition(q8):
    T = q8.table
    for x in range(8):
        for y in range(8):
            w = commutator(q8, x, y)
            assert T[T[y, x], w] == T[x, y]


def test_groups_are_moufang_and_associative(groups):
    for name, G in groups.items():
        assert G.is_associative, name
        assert G.is_moufang, name
        assert not associator_subloop(G) - {0}


def test_octonion_loop_invariants():
    L = builtin("o16")
    assert L.is_moufang and not L.is_associative
    assert len(nucleus(L)) == 2 and len(center(L)) == 2
    assert len(associator_subloop(L)) == 2
    assert order_statistics(L) == {1: 1, 2: 1, 4: 14}


def test_nonmoufang_latin_square_detected():
    # the smallest nonassociative loop is not Moufang
    L = LoopTable(
        [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
    )
    assert not L.is_associative
    assert not L.is_moufang


def test_center_inside_nucleus(loops):
    for L in loops.values():
        assert center(L) <= nucleus(L)
        assert is_normal(L, center(L))
        assert is_normal(L, associator_subloop(L))


def test_subloop_lattice_of_d8(d8):
    sizes = sorted(len(S) for S in enumerate_subloops(d8))
    assert sizes == [1, 2, 2, 2, 2, 2, 4, 4, 4, 8]
    normal = sorted(len(S) for S in enumerate_normal_subloops(d8))
    assert normal == [1, 2, 4, 4, 4, 8]


def test_enumerate_containing(d8):
    z = next(iter(center(d8) - {0}))
    subs = enumerate_subloops(d8, containing=[z])
    assert all(z in S for S in subs)
    assert len(subs) == 5


def test_quotient_by_center(q8):
    Q, part = quotient(q8, center(q8))
    assert Q.order == 4 and Q.is_associative
    assert all((Q.table[x, x] == 0) for x in range(4))
    assert part.cosets[0] == tuple(sorted(center(q8)))


def test_quotient_rejects_non_normal(d8):
    non_normal = next(S for S in enumerate_subloops(d8) if len(S) == 2 and not is_normal(d8, S))
    with pytest.raises(NotNormal):
        quotient(d8, non_normal)


def test_coset_partition_covers(loops):
    L = loops["o16"]
    part = coset_partition(L, center(L))
    assert sorted(x for c in part.cosets for x in c) == list(range(16))
    assert all(x in part.coset(x) for x in range(16))


def test_restrict_and_generate(d8):
    S = subloop_generated(d8, [1])
    H = restrict(d8, S)
    assert H.order == len(S) == 4
    assert H.is_associative


def test_element_orders_and_squares():
    C = cyclic(6)
    assert list(element_orders(C)) == [1, 6, 3, 2, 3, 6]
    assert squares(C) == frozenset({0, 2, 4})
    assert is_power_associative(builtin("o16"))


def test_direct_product():
    P = direct_product(builtin("d8"), cyclic(2))
    assert P.order == 16 and P.is_associative and not P.is_commutative
    assert len(center(P)) == 4


def perms(n):
    return st.permutations(list(range(1, n))).map(lambda p: np.array([0, *p]))


ORDER16 = sorted(k for k, v in small_loops().items() if v.order == 16)


@given(perms(16), st.sampled_from(ORDER16))
def test_relabel_preserves_invariants(perm, name):
    L = small_loops()[name]
    R = relabel(L, perm)
    assert R.is_moufang == L.is_moufang
    assert len(nucleus(R)) == len(nucleus(L))
    assert order_statistics(R) == order_statistics(L)
    assert {perm[x] for x in associator_subloop(L)} == set(associator_subloop(R))
