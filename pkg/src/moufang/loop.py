"""Finite loops as Cayley tables.

A :class:`LoopTable` wraps an ``n x n`` integer array whose rows and columns
are permutations of ``0..n-1`` and in which element 0 is the two-sided
identity.  Structural queries (associators, nucleus, subloops, quotients, ...)
are computed by exhaustive, vectorized scans; everything here targets orders
up to 64.

Subloops are plain ``frozenset`` objects of element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import NoIdentity, NotLatin, NotNormal

Subloop = frozenset


class LoopTable:
    """An immutable, validated Cayley table with identity 0."""

    def __init__(self, table):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise NotLatin("table must be a non-empty square grid")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise NotLatin("entries must lie in 0..n-1")
        ref = np.arange(n)
        if not (np.sort(arr, axis=1) == ref).all() or not (np.sort(arr, axis=0) == ref[:, None]).all():
            raise NotLatin("some row or column repeats an element")
        if not (arr[0] == ref).all() or not (arr[:, 0] == ref).all():
            raise NoIdentity("element 0 is not a two-sided identity")
        arr.setflags(write=False)
        self.table = arr
        self.order = n

    def __repr__(self):
        return f"LoopTable(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, LoopTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __len__(self):
        return self.order

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def tolist(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def ldiv(self) -> np.ndarray:
        """``ldiv[x, z]`` is the unique ``y`` with ``x*y = z``."""
        n = self.order
        out = np.empty((n, n), dtype=np.int64)
        out[np.arange(n)[:, None], self.table] = np.arange(n)[None, :]
        out.setflags(write=False)
        return out

    @cached_property
    def rdiv(self) -> np.ndarray:
        """``rdiv[z, y]`` is the unique ``x`` with ``x*y = z``."""
        n = self.order
        out = np.empty((n, n), dtype=np.int64)
        out[self.table, np.arange(n)[None, :]] = np.arange(n)[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def right_inverse(self) -> np.ndarray:
        return self.ldiv[:, 0].copy()

    @cached_property
    def left_inverse(self) -> np.ndarray:
        return self.rdiv[0, :].copy()

    @cached_property
    def commutators(self) -> np.ndarray:
        """``C[x, y] = w`` with ``xy = (yx)w``."""
        T = self.table
        return self.ldiv[T.T, T]

    @cached_property
    def associators(self) -> np.ndarray:
        """``A[x, y, z] = w`` with ``(xy)z = (x(yz))w``."""
        T = self.table
        n = self.order
        x = np.arange(n)[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        left = T[T[x, y], z]
        right = T[x, T[y, z]]
        return self.ldiv[right, left]

    @cached_property
    def is_associative(self) -> bool:
        return bool((self.associators == 0).all())

    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def is_moufang(self) -> bool:
        T = self.table
        n = self.order
        x = np.arange(n)[:, None, None]
        y = np.arange(n)[None, :, None]
        z = np.arange(n)[None, None, :]
        lhs = T[T[T[x, y], x], z]
        rhs = T[x, T[y, T[x, z]]]
        return bool((lhs == rhs).all())

    @cached_property
    def nucleus_mask(self) -> np.ndarray:
        A = self.associators != 0
        return ~(A.any(axis=(1, 2)) | A.any(axis=(0, 2)) | A.any(axis=(0, 1)))

    @cached_property
    def center_mask(self) -> np.ndarray:
        return self.nucleus_mask & ~(self.commutators != 0).any(axis=1)


def validate_table(raw) -> LoopTable:
    """Check a raw grid and return it as a LoopTable with identity moved to 0."""
    arr = np.array(raw, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise NotLatin("table must be a non-empty square grid")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise NotLatin("entries must lie in 0..n-1")
    ref = np.arange(n)
    if not (np.sort(arr, axis=1) == ref).all() or not (np.sort(arr, axis=0) == ref[:, None]).all():
        raise NotLatin("some row or column repeats an element")
    ids = [e for e in range(n) if (arr[e] == ref).all() and (arr[:, e] == ref).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        arr = _relabel_array(arr, perm)
    return LoopTable(arr)


def _relabel_array(arr: np.ndarray, perm: np.ndarray) -> np.ndarray:
    n = arr.shape[0]
    out = np.empty_like(arr)
    out[perm[:, None], perm[None, :]] = perm[arr]
    return out


def relabel(L: LoopTable, perm) -> LoopTable:
    """Transport the table along ``perm`` (old index -> new index); perm[0] must be 0."""
    perm = np.asarray(perm, dtype=np.int64)
    return LoopTable(_relabel_array(L.table, perm))


def is_moufang(L: LoopTable) -> bool:
    return L.is_moufang


def is_associative(L: LoopTable) -> bool:
    return L.is_associative


def commutator(L: LoopTable, x: int, y: int) -> int:
    T = L.table
    return int(L.ldiv[T[y, x], T[x, y]])


def associator(L: LoopTable, x: int, y: int, z: int) -> int:
    T = L.table
    return int(L.ldiv[T[x, T[y, z]], T[T[x, y], z]])


def nucleus(L: LoopTable) -> Subloop:
    return frozenset(np.flatnonzero(L.nucleus_mask).tolist())


def center(L: LoopTable) -> Subloop:
    return frozenset(np.flatnonzero(L.center_mask).tolist())


def associator_subloop(L: LoopTable) -> Subloop:
    return subloop_generated(L, np.unique(L.associators).tolist())


def subloop_generated(L: LoopTable, seed: Iterable[int]) -> Subloop:
    # product closure suffices: a finite multiplicatively closed subset of a loop is a subloop
    mask = np.zeros(L.order, dtype=bool)
    mask[0] = True
    mask[list(seed)] = True
    T = L.table
    count = int(mask.sum())
    while True:
        idx = np.flatnonzero(mask)
        mask[T[np.ix_(idx, idx)].ravel()] = True
        new = int(mask.sum())
        if new == count:
            return frozenset(idx.tolist())
        count = new


def enumerate_subloops(L: LoopTable, containing: Iterable[int] = ()) -> list[Subloop]:
    """All subloops (containing the given elements), found by extending known
    subloops one generator at a time.  Sorted by size, then members."""
    start = subloop_generated(L, containing)
    seen = {start}
    frontier = [start]
    n = L.order
    while frontier:
        nxt = []
        for S in frontier:
            for x in range(n):
                if x in S:
                    continue
                T = subloop_generated(L, S | {x})
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def is_normal(L: LoopTable, S: Iterable[int]) -> bool:
    """xS = Sx, (xy)S = x(yS) and S(xy) = (Sx)y for all x, y, as sets."""
    s = np.array(sorted(S), dtype=np.int64)
    T = L.table
    n = L.order
    if not np.array_equal(np.sort(T[:, s], axis=1), np.sort(T[s, :].T, axis=1)):
        return False
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    ss = s[None, None, :]
    xy = T[x, y]
    a = np.sort(T[xy, ss], axis=2)
    b = np.sort(T[x, T[y, ss]], axis=2)
    if not np.array_equal(a, b):
        return False
    c = np.sort(T[ss, xy], axis=2)
    d = np.sort(T[T[ss, x], y], axis=2)
    return bool(np.array_equal(c, d))


def enumerate_normal_subloops(L: LoopTable, containing: Iterable[int] = ()) -> list[Subloop]:
    return [S for S in enumerate_subloops(L, containing) if is_normal(L, S)]


@dataclass(frozen=True)
class CosetPartition:
    subloop: Subloop
    cosets: tuple
    index_of: np.ndarray

    def coset(self, x: int) -> tuple:
        return self.cosets[int(self.index_of[x])]


def coset_partition(L: LoopTable, S: Iterable[int]) -> CosetPartition:
    """Left cosets xS, numbered by least element; coset 0 is S itself."""
    s = np.array(sorted(S), dtype=np.int64)
    idx = np.full(L.order, -1, dtype=np.int64)
    cosets = []
    for x in range(L.order):
        if idx[x] < 0:
            members = L.table[x, s]
            idx[members] = len(cosets)
            cosets.append(tuple(sorted(members.tolist())))
    idx.setflags(write=False)
    return CosetPartition(frozenset(s.tolist()), tuple(cosets), idx)


def quotient(L: LoopTable, S: Iterable[int]) -> tuple[LoopTable, CosetPartition]:
    S = frozenset(S)
    if 0 not in S or subloop_generated(L, S) != S or not is_normal(L, S):
        raise NotNormal(f"{sorted(S)} is not a normal subloop")
    part = coset_partition(L, S)
    idx = part.index_of
    reps = np.array([c[0] for c in part.cosets])
    Q = idx[L.table[np.ix_(reps, reps)]]
    if not np.array_equal(idx[L.table], Q[idx[:, None], idx[None, :]]):
        raise NotNormal("coset multiplication is not well defined")
    return LoopTable(Q), part


def restrict(L: LoopTable, S: Iterable[int]) -> LoopTable:
    """The subloop S as a table of its own, members relabelled in increasing order."""
    s = np.array(sorted(S), dtype=np.int64)
    pos = np.full(L.order, -1, dtype=np.int64)
    pos[s] = np.arange(len(s))
    return LoopTable(pos[L.table[np.ix_(s, s)]])


def element_orders(L: LoopTable) -> np.ndarray:
    """Order of each element, computed from left powers x(x(...x))."""
    n = L.order
    T = L.table
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    cur = ar.copy()
    for k in range(1, n + 1):
        orders[(cur == 0) & (orders == 0)] = k
        if (orders > 0).all():
            break
        cur = T[ar, cur]
    return orders


def is_power_associative(L: LoopTable) -> bool:
    """Left and right powers agree for every element (up to exponent n)."""
    T = L.table
    ar = np.arange(L.order)
    left = ar.copy()
    right = ar.copy()
    for _ in range(L.order):
        left = T[ar, left]
        right = T[right, ar]
        if not np.array_equal(left, right):
            return False
    return True


def order_statistics(L: LoopTable) -> dict[int, int]:
    vals, counts = np.unique(element_orders(L), return_counts=True)
    return dict(zip(vals.tolist(), counts.tolist()))


def squares(L: LoopTable) -> frozenset:
    return frozenset(np.diagonal(L.table).tolist())


def direct_product(L1: LoopTable, L2: LoopTable) -> LoopTable:
    """Componentwise product; element (a, b) has index a*|L2| + b."""
    n1, n2 = L1.order, L2.order
    T = L1.table[:, None, :, None] * n2 + L2.table[None, :, None, :]
    return LoopTable(T.reshape(n1 * n2, n1 * n2))

