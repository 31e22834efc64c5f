"""Chein doubles M(G, 2) and their twisted variants M(G, theta, h).

For a group G the double lives on G and a disjoint copy Gbar.  Element x of
G keeps index x and xbar gets index x + |G|.  Products:

    x o y = xy          x o ybar = (yx)bar
    xbar o y = (x theta(y))bar      xbar o ybar = theta(y) x h

M(G, 2) is the case theta = inversion and h = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidData, NotAGroup
from .loop import LoopTable, enumerate_subloops, restrict


@dataclass(frozen=True, eq=False)
class CheinDouble:
    base: LoopTable
    table: LoopTable

    @property
    def embedding(self) -> np.ndarray:
        return np.arange(self.base.order)

    @property
    def bar(self) -> np.ndarray:
        return np.arange(self.base.order) + self.base.order


@dataclass(frozen=True, eq=False)
class AntiAutomorphismData:
    base: LoopTable
    theta: tuple
    h: int

    def __post_init__(self):
        G = self.base
        if not G.is_associative:
            raise InvalidData("base must be a group")
        th = np.asarray(self.theta, dtype=np.int64)
        n = G.order
        if th.shape != (n,) or sorted(th.tolist()) != list(range(n)):
            raise InvalidData("theta must be a permutation of the group elements")
        T = G.table
        if not np.array_equal(th[T], T[th[None, :], th[:, None]]):
            raise InvalidData("theta is not an antiautomorphism")
        if not np.array_equal(th[th], np.arange(n)):
            raise InvalidData("theta is not an involution")
        h = self.h
        if h == 0 or not G.center_mask[h] or th[h] != h:
            raise InvalidData("h must be a non-identity central element fixed by theta")
        if not G.center_mask[T[np.arange(n), th]].all():
            raise InvalidData("x theta(x) must be central for every x")

    @classmethod
    def inversion(cls, G: LoopTable, h: int) -> "AntiAutomorphismData":
        return cls(G, tuple(G.right_inverse.tolist()), h)


def _double(G: LoopTable, theta: np.ndarray, h: int) -> LoopTable:
    n = G.order
    T = G.table
    out = np.empty((2 * n, 2 * n), dtype=np.int64)
    out[:n, :n] = T
    out[:n, n:] = T.T + n  # x o ybar = (yx)bar
    out[n:, :n] = T[:, theta] + n  # xbar o y = (x theta(y))bar
    out[n:, n:] = T[T[theta[None, :], np.arange(n)[:, None]], h]  # theta(y) x h
    return LoopTable(out)


def mg2(G: LoopTable) -> CheinDouble:
    if not G.is_associative:
        raise NotAGroup("M(G, 2) needs a group")
    return CheinDouble(G, _double(G, G.right_inverse, 0))


def mg_theta_h(d: AntiAutomorphismData) -> LoopTable:
    return _double(d.base, np.asarray(d.theta, dtype=np.int64), d.h)


def is_chein_double(L: LoopTable):
    """Return a group G (as its own table) with L = M(G, 2), or None.

    Tries each index-2 associative subloop G; with u outside G and xbar = xu,
    every relation of the doubling is checked on the table.  Any u works when
    L really is a double, so one is enough.
    """
    n = L.order
    if n % 2:
        return None
    k = n // 2
    T = L.table
    for S in enumerate_subloops(L):
        if len(S) != k:
            continue
        G = restrict(L, S)
        if not G.is_associative:
            continue
        g = np.array(sorted(S))
        u = next(x for x in range(n) if x not in S)
        bar = T[g, u]  # bar[i] is the double element of g[i]
        pos = np.full(n, -1, dtype=np.int64)
        pos[g] = np.arange(k)
        GT = G.table
        inv = G.right_inverse
        i = np.arange(k)[:, None]
        j = np.arange(k)[None, :]
        if not np.array_equal(T[g[i], bar[j]], bar[GT[j, i]]):
            continue
        if not np.array_equal(T[bar[i], g[j]], bar[GT[i, inv[j]]]):
            continue
        if not np.array_equal(T[bar[i], bar[j]], g[GT[inv[j], i]]):
            continue
        return G
    return None
