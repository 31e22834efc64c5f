import numpy as np
import pytest

from moufang.catalog import builtin
from moufang.chein import mg2
from moufang.isomorphism import IsoMap, element_colors, fingerprint, is_isomorphic
from moufang.loop import relabel


def random_perm(rng, n):
    return np.concatenate([[0], 1 + rng.permutation(n - 1)])


@pytest.mark.parametrize("name", ["d8", "q8", "o16", "mg2:d8", "mg2:q8", "c4xc2xc2"])
def test_fingerprint_is_label_invariant(loops, name):
    L = loops.get(name) or builtin(name)
    fp = fingerprint(L)
    rng = np.random.default_rng(7)
    for _ in range(100):
        R = relabel(L, random_perm(rng, L.order))
        assert fingerprint(R) == fp


def test_isomorphism_found_and_checked(loops):
    rng = np.random.default_rng(3)
    for name, L in loops.items():
        R = relabel(L, random_perm(rng, L.order))
        iso = is_isomorphic(L, R)
        assert iso is not None, name
        assert iso.preserves(L, R)


def test_non_isomorphic_pairs():
    assert is_isomorphic(builtin("d8"), builtin("q8")) is None
    assert is_isomorphic(builtin("c4xc4"), builtin("c8xc2")) is None
    assert is_isomorphic(mg2(builtin("d8")).table, builtin("o16")) is None
    assert is_isomorphic(builtin("c4"), builtin("c8")) is None


def test_distinct_groups_of_order_16_are_separated(groups):
    sixteen = {k: v for k, v in groups.items() if v.order == 16}
    names = sorted(sixteen)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if is_isomorphic(sixteen[a], sixteen[b]) is not None:
                pytest.fail(f"{a} and {b} reported isomorphic")


def test_isomap_rejects_bad_maps(d8):
    assert not IsoMap(tuple(range(1, 8)) + (0,)).preserves(d8, d8)
    assert IsoMap(tuple(range(8))).preserves(d8, d8)


def test_element_colors_are_equivariant(q8):
    rng = np.random.default_rng(11)
    perm = random_perm(rng, 8)
    c = element_colors(q8)
    d = element_colors(relabel(q8, perm))
    assert sorted(c.tolist()) == sorted(d.tolist())
    assert (d[perm] == c).all()
