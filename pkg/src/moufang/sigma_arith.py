"""Signed residues modulo 2m and the carry function sigma.

Residues live in the window M = {-m+1, ..., m}.  ``sigma`` reports whether an
integer overshot the window (+1), undershot it (-1) or stayed inside (0); the
two constructions use it to decide which power of the twisting element to
multiply in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Window:
    m: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise DomainError(f"window half-width must be a positive integer, got {self.m!r}")

    @property
    def lo(self) -> int:
        return 1 - self.m

    @property
    def hi(self) -> int:
        return self.m

    @property
    def size(self) -> int:
        return 2 * self.m

    def members(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, i) -> bool:
        return self.lo <= i <= self.hi

    def reduce(self, k: int) -> int:
        """The representative of ``k mod 2m`` inside the window."""
        r = k % (2 * self.m)
        return r if r <= self.m else r - 2 * self.m


def sigma(i, w: Window):
    """Carry of ``i`` relative to the window; works elementwise on arrays."""
    if isinstance(i, np.ndarray):
        return (i > w.m).astype(np.int64) - (i < 1 - w.m).astype(np.int64)
    if i > w.m:
        return 1
    if i < 1 - w.m:
        return -1
    return 0


def _check(w: Window, *xs):
    for x in xs:
        if x not in w:
            raise DomainError(f"{x} is not in M = {{{w.lo}, ..., {w.hi}}}")


def oplus(i: int, j: int, w: Window) -> int:
    _check(w, i, j)
    return i + j - 2 * w.m * sigma(i + j, w)


def ominus(i: int, j: int, w: Window) -> int:
    _check(w, i, j)
    return i - j - 2 * w.m * sigma(i - j, w)
