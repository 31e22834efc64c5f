"""Isomorphism invariants and isomorphism search for loop tables.

Elements are first colored by local invariants (order, how many elements they
fail to commute or associate with, ...) and the coloring is refined by the
multiset of colors seen along each row and column of the table until it
stabilizes.  The search then picks a small generating set of the first loop,
tries color-compatible images for the generators and propagates the partial
map through products, backtracking on any inconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .loop import (
    LoopTable,
    associator_subloop,
    element_orders,
    subloop_generated,
)


@dataclass(frozen=True, order=True)
class Fingerprint:
    order: int
    orders: tuple
    center: int
    nucleus: int
    associator_subloop: int
    squares: int
    commutator_profile: tuple
    associator_count: int
    color_profile: tuple


@dataclass(frozen=True)
class IsoMap:
    mapping: tuple

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def preserves(self, L1: LoopTable, L2: LoopTable) -> bool:
        m = np.array(self.mapping)
        if sorted(self.mapping) != list(range(L1.order)) or m[0] != 0:
            return False
        return bool(np.array_equal(m[L1.table], L2.table[m[:, None], m[None, :]]))


def _initial_colors(L: LoopTable) -> list[tuple]:
    T = L.table
    orders = element_orders(L)
    nc = (L.commutators != 0).sum(axis=1)
    A = L.associators != 0
    al, am, ar = A.sum(axis=(1, 2)), A.sum(axis=(0, 2)), A.sum(axis=(0, 1))
    sq = np.diagonal(T)
    is_sq = np.bincount(sq, minlength=L.order) > 0
    return [
        (int(orders[x]), int(nc[x]), int(al[x]), int(am[x]), int(ar[x]), bool(is_sq[x]), int(orders[sq[x]]))
        for x in range(L.order)
    ]


def _refine(L: LoopTable) -> np.ndarray:
    T = L.table
    n = L.order
    colors = np.array([hash(c) for c in _initial_colors(L)], dtype=np.int64)
    ncolors = len(np.unique(colors))
    while True:
        _, rank = np.unique(colors, return_inverse=True)
        key = rank[None, :] * n * n + rank[T] * n + rank[T.T]
        key.sort(axis=1)
        new = np.array([hash((int(colors[x]), tuple(key[x].tolist()))) for x in range(n)], dtype=np.int64)
        k = len(np.unique(new))
        colors = new
        if k == ncolors:
            break
        ncolors = k
    colors.setflags(write=False)
    return colors


def element_colors(L: LoopTable) -> np.ndarray:
    """Isomorphism-invariant coloring of the elements (equal for corresponding elements)."""
    colors = L.__dict__.get("_colors")
    if colors is None:
        colors = L.__dict__["_colors"] = _refine(L)
    return colors


def fingerprint(L: LoopTable) -> Fingerprint:
    orders = element_orders(L)
    vals, counts = np.unique(orders, return_counts=True)
    nc = (L.commutators != 0).sum(axis=1)
    colors = element_colors(L)
    cvals, ccounts = np.unique(colors, return_counts=True)
    return Fingerprint(
        order=L.order,
        orders=tuple(zip(vals.tolist(), counts.tolist())),
        center=int(L.center_mask.sum()),
        nucleus=int(L.nucleus_mask.sum()),
        associator_subloop=len(associator_subloop(L)),
        squares=len(set(np.diagonal(L.table).tolist())),
        commutator_profile=tuple(sorted(nc.tolist())),
        associator_count=int((L.associators != 0).sum()),
        color_profile=tuple(zip(cvals.tolist(), ccounts.tolist())),
    )


def _choose_generators(L: LoopTable, colors: np.ndarray) -> list[int]:
    _, inv, counts = np.unique(colors, return_inverse=True, return_counts=True)
    size = counts[inv]
    S = frozenset({0})
    gens = []
    while len(S) < L.order:
        best = None
        for x in range(L.order):
            if x in S:
                continue
            grown = subloop_generated(L, S | {x})
            key = (int(size[x]), -len(grown), x)
            if best is None or key < best[0]:
                best = (key, x, grown)
        gens.append(best[1])
        S = best[2]
    return gens


def _propagate(T1, T2, c1, c2, mapping, used) -> bool:
    while True:
        D = np.flatnonzero(mapping >= 0)
        img = mapping[D]
        P = T1[np.ix_(D, D)].ravel()
        I = T2[np.ix_(img, img)].ravel()
        known = mapping[P]
        ok = known >= 0
        if (known[ok] != I[ok]).any():
            return False
        if ok.all():
            return True
        elems, first = np.unique(P[~ok], return_index=True)
        ims = I[~ok][first]
        if used[ims].any() or len(np.unique(ims)) != len(ims):
            return False
        if (c1[elems] != c2[ims]).any():
            return False
        mapping[elems] = ims
        used[ims] = True


def is_isomorphic(L1: LoopTable, L2: LoopTable):
    """Return an :class:`IsoMap` from L1 onto L2, or None."""
    if L1.order != L2.order:
        return None
    n = L1.order
    c1, c2 = element_colors(L1), element_colors(L2)
    if not np.array_equal(np.sort(c1), np.sort(c2)):
        return None
    if n == 1:
        return IsoMap((0,))
    T1, T2 = L1.table, L2.table
    gens = _choose_generators(L1, c1)
    cands = [np.flatnonzero(c2 == c1[g]) for g in gens]

    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    mapping[0] = 0
    used[0] = True

    def search(level, mapping, used):
        if level == len(gens):
            return mapping
        g = gens[level]
        if mapping[g] >= 0:
            return search(level + 1, mapping, used)
        for cand in cands[level]:
            if used[cand]:
                continue
            m2, u2 = mapping.copy(), used.copy()
            m2[g] = cand
            u2[cand] = True
            if _propagate(T1, T2, c1, c2, m2, u2):
                found = search(level + 1, m2, u2)
                if found is not None:
                    return found
        return None

    found = search(0, mapping, used)
    if found is None:
        return None
    iso = IsoMap(tuple(found.tolist()))
    assert iso.preserves(L1, L2)
    return iso
