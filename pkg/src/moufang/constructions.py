"""Cyclic and dihedral modifications of a Moufang loop's multiplication.

Both constructions start from a normal subloop S with a cyclic (resp. dihedral)
quotient and a suitable element h, index the cosets by the window
M = {-m+1, ..., m}, and multiply a quarter of the table by h or h^{-1}:

    cyclic:    x * y = xy . h^{sigma(i+j)}
    dihedral:  x * y = xy . h^{(-1)^r sigma(i+j)},   r = 1 iff y lies outside G0

The result is again Moufang with the same associators, nucleus and associator
subloop as the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams, OrderMismatch, ParseError
from .loop import (
    CosetPartition,
    LoopTable,
    associator_subloop,
    element_orders,
    enumerate_normal_subloops,
    quotient,
)
from .sigma_arith import Window, sigma


@dataclass(frozen=True, eq=False)
class CyclicParams:
    loop: LoopTable
    S: frozenset
    window: Window
    alpha: int
    h: int
    coset_index: np.ndarray = field(repr=False)
    partition: CosetPartition = field(repr=False)

    kind = "cyclic"


@dataclass(frozen=True, eq=False)
class DihedralParams:
    loop: LoopTable
    S: frozenset
    window: Window
    beta: int
    gamma: int
    e: int
    f: int
    h: int
    left_index: np.ndarray = field(repr=False)
    right_index: np.ndarray = field(repr=False)
    parity: np.ndarray = field(repr=False)
    partition: CosetPartition = field(repr=False)

    kind = "dihedral"

    @property
    def G0(self) -> frozenset:
        return frozenset(np.flatnonzero(self.parity == 0).tolist())

    @property
    def G1(self) -> frozenset:
        return frozenset(np.flatnonzero(self.parity == 1).tolist())

    @property
    def coset_index(self) -> np.ndarray:
        """i with x in alpha^i (on G0) or x in e alpha^i (on G1)."""
        return self.left_index


Params = CyclicParams | DihedralParams


@dataclass(frozen=True)
class DistanceReport:
    order: int
    count: int

    @property
    def fraction(self) -> float:
        return self.count / self.order**2


def _powers(Q: LoopTable, a: int) -> list[int]:
    out = [0]
    while True:
        nxt = Q.mul(out[-1], a)
        if nxt == 0:
            return out
        out.append(nxt)


def _check_h(L: LoopTable, S: frozenset, h: int) -> None:
    if h == 0 or h not in S:
        raise InvalidParams(f"h={h} must be a non-identity element of S")


def make_cyclic_params(L: LoopTable, S, alpha: int, h: int) -> CyclicParams:
    S = frozenset(S)
    try:
        Q, part = quotient(L, S)
    except Exception as exc:
        raise InvalidParams(str(exc)) from exc
    if Q.order % 2:
        raise InvalidParams(f"|G/S| = {Q.order} is odd")
    w = Window(Q.order // 2)
    a = int(part.index_of[alpha])
    pw = _powers(Q, a)
    if len(pw) != Q.order or not Q.is_associative:
        raise InvalidParams(f"G/S is not cyclic with generator the coset of {alpha}")
    _check_h(L, S, h)
    if not L.center_mask[h]:
        raise InvalidParams(f"h={h} is not central")
    of_coset = np.empty(Q.order, dtype=np.int64)
    for k, c in enumerate(pw):
        of_coset[c] = w.reduce(k)
    idx = of_coset[part.index_of]
    idx.setflags(write=False)
    return CyclicParams(L, S, w, int(alpha), int(h), idx, part)


def make_dihedral_params(L: LoopTable, S, beta: int, gamma: int, h: int, e=None, f=None) -> DihedralParams:
    S = frozenset(S)
    try:
        Q, part = quotient(L, S)
    except Exception as exc:
        raise InvalidParams(str(exc)) from exc
    n = Q.order
    if n % 4 or not Q.is_associative:
        raise InvalidParams(f"G/S (order {n}) cannot be dihedral of order 4m")
    w = Window(n // 4)
    qi = part.index_of
    b, g = int(qi[beta]), int(qi[gamma])
    if b == 0 or g == 0 or Q.mul(b, b) or Q.mul(g, g):
        raise InvalidParams("beta and gamma must be involutions of G/S")
    a = Q.mul(b, g)
    pw = _powers(Q, a)
    if len(pw) != 2 * w.m or b in pw:
        raise InvalidParams("beta*gamma does not have order 2m, or beta, gamma do not generate G/S")
    e = int(beta if e is None else e)
    f = int(gamma if f is None else f)
    if qi[e] != b or qi[f] != g:
        raise InvalidParams("e must lie in beta and f in gamma")
    of_coset = np.full(n, -1, dtype=np.int64)
    for k, c in enumerate(pw):
        of_coset[c] = w.reduce(k)
    odd = of_coset < 0
    # left index of an odd coset q is that of e\q, right index that of q/f
    left = of_coset.copy()
    right = of_coset.copy()
    for q in np.flatnonzero(odd):
        left[q] = of_coset[Q.ldiv[b, q]]
        right[q] = of_coset[Q.rdiv[q, g]]
    parity = odd[qi].astype(np.int64)
    G0 = np.flatnonzero(parity == 0)
    G1 = np.flatnonzero(parity == 1)
    _check_h(L, S, h)
    T = L.table
    if not L.nucleus_mask[h]:
        raise InvalidParams(f"h={h} is not in the nucleus")
    if not (T[h, G0] == T[G0, h]).all():
        raise InvalidParams(f"h={h} does not commute with G0")
    if not (T[T[h, G1], h] == G1).all():
        raise InvalidParams(f"hxh != x for some x in G1 (h={h})")
    li, ri = left[qi], right[qi]
    for arr in (li, ri, parity):
        arr.setflags(write=False)
    return DihedralParams(L, S, w, int(beta), int(gamma), e, f, int(h), li, ri, parity, part)


def _require_moufang(L: LoopTable) -> None:
    if not L.is_moufang:
        raise InvalidParams("the constructions are only defined on Moufang loops")


def _twist(L: LoopTable, h: int, exponent: np.ndarray) -> LoopTable:
    hinv = int(L.right_inverse[h])
    hp = np.array([hinv, 0, h])
    T = L.table
    return LoopTable(T[T, hp[exponent + 1]])


def apply_cyclic(p: CyclicParams) -> LoopTable:
    _require_moufang(p.loop)
    if not isinstance(p, CyclicParams):
        raise InvalidParams("expected cyclic parameters")
    I = p.coset_index
    return _twist(p.loop, p.h, sigma(I[:, None] + I[None, :], p.window))


def apply_dihedral(p: DihedralParams) -> LoopTable:
    _require_moufang(p.loop)
    if not isinstance(p, DihedralParams):
        raise InvalidParams("expected dihedral parameters")
    s = sigma(p.left_index[:, None] + p.right_index[None, :], p.window)
    sign = 1 - 2 * p.parity[None, :]
    return _twist(p.loop, p.h, sign * s)


def apply(p: Params) -> LoopTable:
    return apply_cyclic(p) if isinstance(p, CyclicParams) else apply_dihedral(p)


def _candidates(L: LoopTable):
    """Normal subloops S with a nontrivial group quotient; S must contain A(L)."""
    A = associator_subloop(L)
    for S in enumerate_normal_subloops(L, containing=A):
        if len(S) == L.order:
            continue
        Q, part = quotient(L, S)
        if Q.order % 2 == 0 and Q.is_associative:
            yield S, Q, part


def _dedupe(params: list, dedupe: bool) -> list:
    if not dedupe:
        return params
    seen = set()
    out = []
    for p in params:
        key = apply(p).table.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def find_cyclic_params(L: LoopTable, dedupe: bool = True) -> list[CyclicParams]:
    """All (S, alpha, h) satisfying the cyclic condition; [] for non-Moufang L."""
    if not L.is_moufang:
        return []
    out = []
    Z = np.flatnonzero(L.center_mask)
    for S, Q, part in _candidates(L):
        hs = [int(h) for h in Z if h and h in S]
        if not hs:
            continue
        gens = np.flatnonzero(element_orders(Q) == Q.order)
        for c in gens:
            alpha = part.cosets[c][0]
            for h in hs:
                out.append(make_cyclic_params(L, S, alpha, h))
    return _dedupe(out, dedupe)


def find_dihedral_params(L: LoopTable, dedupe: bool = True) -> list[DihedralParams]:
    """All (S, beta, gamma, h) satisfying the dihedral condition, both orderings of
    beta and gamma; e and f are the least elements of their cosets."""
    if not L.is_moufang:
        return []
    out = []
    T = L.table
    N = np.flatnonzero(L.nucleus_mask)
    for S, Q, part in _candidates(L):
        n = Q.order
        if n % 4:
            continue
        hs0 = [int(h) for h in N if h and h in S]
        if not hs0:
            continue
        invol = [q for q in range(1, n) if Q.mul(q, q) == 0]
        for b in invol:
            for g in invol:
                if g == b:
                    continue
                a = Q.mul(b, g)
                pw = _powers(Q, a)
                if len(pw) != n // 2 or b in pw:
                    continue
                beta, gamma = part.cosets[b][0], part.cosets[g][0]
                odd = np.isin(part.index_of, pw, invert=True)
                G0, G1 = np.flatnonzero(~odd), np.flatnonzero(odd)
                for h in hs0:
                    if (T[h, G0] == T[G0, h]).all() and (T[T[h, G1], h] == G1).all():
                        out.append(make_dihedral_params(L, S, beta, gamma, h))
    return _dedupe(out, dedupe)


def find_params(L: LoopTable, dedupe: bool = True) -> list[Params]:
    return _dedupe(find_cyclic_params(L, False) + find_dihedral_params(L, False), dedupe)


def distance(L1: LoopTable, L2: LoopTable) -> DistanceReport:
    """Number of cells in which two tables on the same set disagree."""
    if L1.order != L2.order:
        raise OrderMismatch(f"orders differ: {L1.order} vs {L2.order}")
    return DistanceReport(L1.order, int((L1.table != L2.table).sum()))


# ---------------------------------------------------------------- text form


def params_to_text(p: Params) -> str:
    lines = [p.kind, "S " + " ".join(str(s) for s in sorted(p.S))]
    if isinstance(p, CyclicParams):
        lines.append(f"alpha {p.alpha}")
    else:
        lines += [f"beta {p.beta}", f"gamma {p.gamma}", f"e {p.e}", f"f {p.f}"]
    lines.append(f"h {p.h}")
    return "\n".join(lines) + "\n"


def params_from_text(L: LoopTable, text: str) -> Params:
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise ParseError("missing parameter kind")
    kind = lines[0][0]
    fields = {}
    for toks in lines[1:]:
        key, vals = toks[0], toks[1:]
        if key in fields or not all(v.isdigit() for v in vals):
            raise ParseError(f"malformed line {' '.join(toks)!r}")
        fields[key] = [int(v) for v in vals]
    try:
        S = fields.pop("S")
        h = _single(fields.pop("h"))
        if kind == "cyclic":
            alpha = _single(fields.pop("alpha"))
            p = make_cyclic_params(L, S, alpha, h)
        elif kind == "dihedral":
            beta = _single(fields.pop("beta"))
            gamma = _single(fields.pop("gamma"))
            e = _single(fields.pop("e", [beta]))
            f = _single(fields.pop("f", [gamma]))
            p = make_dihedral_params(L, S, beta, gamma, h, e, f)
        else:
            raise ParseError(f"unknown parameter kind {kind!r}")
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]}") from exc
    if fields:
        raise ParseError(f"unexpected fields {sorted(fields)}")
    return p


def _single(vals: list[int]) -> int:
    if len(vals) != 1:
        raise ParseError("expected a single index")
    return vals[0]
