import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moufang.catalog import builtin
from moufang.chein import mg2
from moufang.code_loops import (
    PowerMap,
    TrilinearForm,
    associator_form,
    build_code_loop,
    cdeg,
    code_structure_consistent,
    derived_form,
    derived_table,
    execute_code_path,
    final_power_map,
    is_code_loop,
    plan_code_path,
    popcount,
    power_delta,
    radical,
    read_power_map,
    reduced_basis,
    span,
    symplectic_analyze,
    symplectic_decomposition,
    trilinear_equivalent,
)
from moufang.constructions import apply, find_params
from moufang.errors import CdegTooHigh, DeltaNotQuadratic, NotApplicable, ParseError
from moufang.isomorphism import is_isomorphic
from moufang.loop import nucleus

maps3 = st.integers(0, 127).map(lambda b: PowerMap(3, (0,) + tuple((b >> i) & 1 for i in range(7))))


def brute_cdeg(P):
    """Largest n whose derived form does not vanish identically."""
    V = range(2**P.k)
    best = 0
    for n in range(1, P.k + 1):
        if any(derived_form(P, *vs) for vs in itertools.product(V, repeat=n)):
            best = n
    return best


def test_gf2_helpers():
    assert popcount(0b1011) == 3
    b = reduced_basis([3, 5, 6, 7])
    assert len(b) == 3
    assert span(reduced_basis([1, 2])) == [0, 1, 2, 3]


@settings(max_examples=128)
@given(maps3)
def test_cdeg_agrees_with_derived_forms(P):
    assert cdeg(P) == brute_cdeg(P)


def test_cdeg_examples():
    assert cdeg(PowerMap.zero(3)) == 0
    assert cdeg(PowerMap.from_function(3, lambda v: v & 1)) == 1
    assert cdeg(PowerMap.from_function(3, lambda v: int(popcount(v) in (2, 3)))) == 2
    assert cdeg(PowerMap.from_function(3, lambda v: int(v != 0))) == 3
    assert cdeg(PowerMap.from_function(4, lambda v: int(v == 15))) == 4


def test_radical_requires_low_degree():
    with pytest.raises(CdegTooHigh):
        radical(PowerMap.from_function(4, lambda v: int(v == 15)))


def test_power_map_text(tmp_path):
    P = PowerMap(3, (0, 1, 1, 1, 1, 1, 1, 1))
    path = tmp_path / "p.pm"
    path.write_text(P.to_text())
    assert read_power_map(path) == P
    for bad in ["", "3\n0101\n", "2\n1000\n", "2\n01x0\n"]:
        with pytest.raises(ParseError):
            PowerMap.from_text(bad)


def test_octonion_loop_is_code_loop():
    L = builtin("o16")
    sd = symplectic_analyze(L)
    assert sd is not None and sd.k == 3
    assert cdeg(sd.P) == 3
    assert radical(sd.P) == []
    assert code_structure_consistent(sd)
    assert is_code_loop(L)


@pytest.mark.parametrize("name", ["d8", "q8", "c4xc2", "e3"])
def test_doubles_of_small_groups_are_code_loops(name):
    L = mg2(builtin(name)).table
    assert is_code_loop(L)
    sd = symplectic_analyze(L)
    assert code_structure_consistent(sd)


def test_gamma_double_is_not_code_loop(gamma16):
    L = mg2(gamma16).table
    assert L.is_moufang
    assert not is_code_loop(L)
    assert symplectic_analyze(L) is None


def test_trivial_loop_is_not_code_loop():
    assert not is_code_loop(builtin("c1"))
    assert is_code_loop(builtin("c2"))


def test_groups_that_are_code_loops():
    assert is_code_loop(builtin("q8"))
    assert is_code_loop(builtin("d8"))
    assert not is_code_loop(builtin("c4xc4"))
    assert not is_code_loop(builtin("c3"))


@settings(max_examples=128, deadline=None)
@given(maps3)
def test_build_realizes_power_map(P):
    L = build_code_loop(P)
    assert L.order == 16 and L.is_moufang and is_code_loop(L)
    sd = symplectic_analyze(L)
    assert sd.z == 1
    assert code_structure_consistent(sd)
    assert len(nucleus(L)) == 2 * 2 ** len(radical(P))


def test_build_small_cases():
    assert is_isomorphic(build_code_loop(PowerMap(1, (0, 1))), builtin("c4")) is not None
    assert is_isomorphic(build_code_loop(PowerMap(1, (0, 0))), builtin("v4")) is not None
    assert is_isomorphic(build_code_loop(PowerMap(2, (0, 1, 1, 1))), builtin("q8")) is not None
    assert is_isomorphic(build_code_loop(PowerMap(3, (0, 1, 1, 1, 1, 1, 1, 1))), builtin("o16")) is not None


def test_trilinear_forms():
    P = PowerMap(3, (0, 1, 1, 1, 1, 1, 1, 1))
    f = TrilinearForm.from_power_map(P)
    assert f.is_trilinear()
    assert f.on_basis()[0, 1, 2] == 1
    g = associator_form(builtin("o16"))
    assert g is not None and g.is_trilinear()
    assert trilinear_equivalent(f, g) is not None
    zero = TrilinearForm.from_power_map(PowerMap.zero(3))
    assert trilinear_equivalent(f, zero) is None


def test_associator_form_for_groups():
    assert associator_form(builtin("d8")) is None


def test_symplectic_decomposition():
    P = PowerMap.from_function(4, lambda v: ((v & 1) & (v >> 1 & 1)) ^ ((v >> 2 & 1) & (v >> 3 & 1)))
    B = derived_table(P, 2)
    planes, rad = symplectic_decomposition(B)
    assert len(planes) == 2 and rad == []
    for x, y in planes:
        assert B[x, y] == 1


def test_power_delta_classification(loops):
    seen = {2: 0, 4: 0}
    for name, L in loops.items():
        if L.order != 16 or not is_code_loop(L) or L.is_associative:
            continue
        k = symplectic_analyze(L).k
        for p in find_params(L):
            try:
                d = power_delta(L, apply(p), p)
            except NotApplicable:
                continue
            seen[d.quotient_order] += 1
            assert d.support_matches
            if d.quotient_order == 2:
                assert d.cdeg <= 1
            else:
                assert d.cdeg == 2
                rad = [v for v in range(2**k) if not derived_table(d.delta, 2)[v].any()]
                assert len(rad) == 2 ** (k - 2)
    assert seen[2] and seen[4]


def test_power_delta_rejects_non_code_loops(gamma16):
    L = mg2(gamma16).table
    p = find_params(L)[0]
    with pytest.raises(NotApplicable):
        power_delta(L, apply(p), p)


def test_plan_rejects_cubic_delta():
    P = PowerMap.zero(3)
    R = PowerMap.from_function(3, lambda v: int(v == 7))
    with pytest.raises(DeltaNotQuadratic):
        plan_code_path(P, R)


@settings(max_examples=40, deadline=None)
@given(maps3, st.integers(0, 63))
def test_code_path_reaches_target(P, q):
    # q picks the linear and quadratic monomials of R - P
    mons = [1, 2, 4, 3, 5, 6]
    delta = PowerMap.from_function(3, lambda v: sum((q >> i & 1) * int(v & m == m) for i, m in enumerate(mons)) & 1)
    R = P + delta
    steps = plan_code_path(P, R)
    assert sum(s.kind == "cyclic" for s in steps) <= 1
    loops = execute_code_path(P, steps)
    assert final_power_map(P, loops) == R
    acc = PowerMap.zero(3)
    for s in steps:
        acc = acc + s.delta
    assert acc == delta


def test_equivalent_associator_forms_are_code_loops(loops):
    ref = associator_form(builtin("o16"))
    for name, L in loops.items():
        if L.order != 16 or not L.is_moufang:
            continue
        f = associator_form(L)
        if f is not None and trilinear_equivalent(f, ref) is not None:
            assert is_code_loop(L), name
            assert radical(symplectic_analyze(L).P) == []
