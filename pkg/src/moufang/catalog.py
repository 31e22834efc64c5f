"""Small groups (and the order-16 octonion loop) by name, a coset enumerator
for finite presentations, and the ``.tbl`` text format.

Builtin names::

    c<n>              cyclic group of order n
    d<2n>             dihedral group of order 2n (d4 is the Klein group, also ``v4``)
    q<2^k>            generalized quaternion group, k >= 3
    e<k>              elementary abelian group of order 2^k
    a4, s3            alternating group A4, symmetric group S3 (= d6)
    g16_gamma2c1      <a, b | a^4 = b^4 = (ab)^2 = [a^2, b] = 1>
    o16               octonion loop of order 16 (not a group)
    AxB               direct product, e.g. ``d8xc2``
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EnumerationOverflow, NotAGroup, ParseError, UnknownName
from .loop import LoopTable, direct_product, validate_table

# ---------------------------------------------------------------- closed forms


def cyclic(n: int) -> LoopTable:
    a = np.arange(n)
    return LoopTable((a[:, None] + a[None, :]) % n)


def elementary_abelian(k: int) -> LoopTable:
    a = np.arange(2**k)
    return LoopTable(a[:, None] ^ a[None, :])


def dihedral(order: int) -> LoopTable:
    """D_{2n}: a^i b^j has index i + n*j, with a^n = b^2 = 1 and ba = a^{-1}b."""
    if order < 2 or order % 2:
        raise UnknownName(f"dihedral order must be even, got {order}")
    n = order // 2
    T = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        i, j = x % n, x // n
        for y in range(order):
            k, l = y % n, y // n
            T[x, y] = (i + (-1) ** j * k) % n + n * ((j + l) % 2)
    return LoopTable(T)


def quaternion(order: int) -> LoopTable:
    """Q_{2^k}: a^i b^j has index i + 2N*j where a^{2N} = 1, b^2 = a^N, bab^{-1} = a^{-1}."""
    if order < 8 or order & (order - 1):
        raise UnknownName(f"generalized quaternion order must be a power of 2 >= 8, got {order}")
    N = order // 4
    h = 2 * N
    T = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        i, j = x % h, x // h
        for y in range(order):
            k, l = y % h, y // h
            e = i + (-1) ** j * k + (N if j and l else 0)
            T[x, y] = e % h + h * ((j + l) % 2)
    return LoopTable(T)


def alternating4() -> LoopTable:
    perms = sorted(p for p in itertools.permutations(range(4)) if _parity(p) == 0)
    index = {p: i for i, p in enumerate(perms)}
    T = [[index[tuple(p[q[i]] for i in range(4))] for q in perms] for p in perms]
    return LoopTable(T)


def _parity(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


_FANO = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]


def octonion16() -> LoopTable:
    """Units +-e_u of the octonions; +e_u has index 2u and -e_u index 2u+1."""
    prod = {}
    for a, b, c in _FANO:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            prod[x, y] = (z, 0)
            prod[y, x] = (z, 1)
    T = np.empty((16, 16), dtype=np.int64)
    for x in range(16):
        u, s = divmod(x, 2)
        for y in range(16):
            v, t = divmod(y, 2)
            if u == 0:
                w, sign = v, 0
            elif v == 0:
                w, sign = u, 0
            elif u == v:
                w, sign = 0, 1
            else:
                w, sign = prod[u, v]
            T[x, y] = 2 * w + (s ^ t ^ sign)
    return LoopTable(T)


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class Presentation:
    """Generators are 1..ngens; a relator is a word of signed generator numbers
    (``-2`` is the inverse of the second generator)."""

    ngens: int
    relators: tuple
    order_bound: int = 1024

    def __post_init__(self):
        if self.order_bound < 1:
            raise ValueError("order bound must be positive")
        for rel in self.relators:
            if not rel:
                raise ValueError("empty relator")
            for g in rel:
                if g == 0 or abs(g) > self.ngens:
                    raise ValueError(f"bad generator {g} in relator {rel}")


def _col(g: int) -> int:
    return 2 * (abs(g) - 1) + (g < 0)


def _enumerate_cosets(p: Presentation, max_cosets: int):
    ncols = 2 * p.ngens
    parent = [0]
    nbr = [[-1] * ncols]
    pending = []

    def find(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def new_coset():
        if len(parent) >= max_cosets:
            raise EnumerationOverflow(f"coset enumeration exceeded {max_cosets} cosets")
        c = len(parent)
        parent.append(c)
        nbr.append([-1] * ncols)
        return c

    def set_edge(a, d, b):
        a, b = find(a), find(b)
        cur = nbr[a][d]
        if cur < 0:
            nbr[a][d] = b
        elif find(cur) != b:
            pending.append((cur, b))
        cur = nbr[b][d ^ 1]
        if cur < 0:
            nbr[b][d ^ 1] = a
        elif find(cur) != a:
            pending.append((cur, a))
        process()

    def process():
        while pending:
            a, b = pending.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            parent[b] = a
            for d in range(ncols):
                t = nbr[b][d]
                if t < 0:
                    continue
                cur = nbr[a][d]
                if cur < 0:
                    nbr[a][d] = t
                else:
                    pending.append((cur, t))

    def follow(c, d):
        c = find(c)
        t = nbr[c][d]
        if t < 0:
            t = new_coset()
            set_edge(c, d, t)
        return find(t)

    rels = [[_col(g) for g in rel] for rel in p.relators]
    i = 0
    while i < len(parent):
        if find(i) == i:
            for rel in rels:
                c = i
                for d in rel[:-1]:
                    c = follow(c, d)
                    if find(i) != i:
                        break
                else:
                    set_edge(c, rel[-1], i)
                if find(i) != i:
                    break
            else:
                for d in range(ncols):
                    if find(i) != i:
                        break
                    follow(i, d)
        i += 1

    live = [c for c in range(len(parent)) if find(c) == c]
    number = {c: k for k, c in enumerate(live)}
    return [[number[find(nbr[c][d])] for d in range(ncols)] for c in live]


def group_from_presentation(p: Presentation, max_cosets: int | None = None) -> LoopTable:
    """Regular representation by coset enumeration over the trivial subgroup."""
    if max_cosets is None:
        max_cosets = 64 * p.order_bound + 1024
    act = _enumerate_cosets(p, max_cosets)
    n = len(act)
    if n > p.order_bound:
        raise EnumerationOverflow(f"group has order {n} > bound {p.order_bound}")
    # word (as a list of columns) reaching each coset from coset 0
    words = {0: []}
    queue = [0]
    for c in queue:
        for g in range(p.ngens):
            t = act[c][2 * g]
            if t not in words:
                words[t] = words[c] + [2 * g]
                queue.append(t)
    T = np.empty((n, n), dtype=np.int64)
    for c in range(n):
        for e in range(n):
            x = c
            for d in words[e]:
                x = act[x][d]
            T[c, e] = x
    G = LoopTable(T)
    if not G.is_associative:
        raise NotAGroup("coset enumeration produced a non-associative table")
    for rel in p.relators:
        if word_value(G, _gen_images(act, p.ngens), rel) != 0:
            raise NotAGroup(f"relator {rel} does not hold")
    return G


def _gen_images(act, ngens):
    return [act[0][2 * g] for g in range(ngens)]


def word_value(G: LoopTable, gens, word) -> int:
    """Evaluate a signed-generator word in a group table, left to right."""
    inv = G.right_inverse
    x = 0
    for g in word:
        y = gens[abs(g) - 1]
        x = G.mul(x, int(inv[y]) if g < 0 else y)
    return x


def g16_gamma2c1() -> LoopTable:
    # a^4, b^4, (ab)^2, [a^2, b] = a^-2 b^-1 a^2 b
    rels = ((1, 1, 1, 1), (2, 2, 2, 2), (1, 2, 1, 2), (-1, -1, -2, 1, 1, 2))
    return group_from_presentation(Presentation(2, rels, order_bound=64))


# ---------------------------------------------------------------- names

_SIMPLE = {
    "a4": alternating4,
    "s3": lambda: dihedral(6),
    "v4": lambda: dihedral(4),
    "g16_gamma2c1": g16_gamma2c1,
    "o16": octonion16,
}

_PATTERNS = [
    (re.compile(r"c(\d+)"), lambda k: cyclic(k)),
    (re.compile(r"d(\d+)"), lambda k: dihedral(k)),
    (re.compile(r"q(\d+)"), lambda k: quaternion(k)),
    (re.compile(r"e(\d+)"), lambda k: elementary_abelian(k)),
]


def builtin(name: str) -> LoopTable:
    key = name.strip().lower()
    if not key:
        raise UnknownName("empty name")
    if key in _SIMPLE:
        return _SIMPLE[key]()
    if "x" in key:
        parts = key.split("x")
        if all(parts):
            out = builtin(parts[0])
            for part in parts[1:]:
                out = direct_product(out, builtin(part))
            return out
    for pat, make in _PATTERNS:
        m = pat.fullmatch(key)
        if m and int(m.group(1)) >= 1:
            return make(int(m.group(1)))
    raise UnknownName(f"unknown builtin {name!r}")


BUILTIN_NAMES = [
    "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8", "c9", "c10", "c11", "c12",
    "c13", "c14", "c15", "c16",
    "v4", "e3", "e4", "c4xc2", "c4xc4", "c8xc2", "c4xc2xc2",
    "s3", "d8", "d10", "d12", "d14", "d16", "q8", "q16", "a4",
    "c3xc2xc2", "c6xc2", "d8xc2", "q8xc2", "s3xc2", "g16_gamma2c1", "o16",
]


# ---------------------------------------------------------------- .tbl files


def format_table(L: LoopTable) -> str:
    lines = [str(L.order)]
    lines += [" ".join(str(v) for v in row) for row in L.tolist()]
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> LoopTable:
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 1 or not head[0].isdigit() or int(head[0]) < 1:
        raise ParseError(f"malformed header {lines[0]!r}")
    n = int(head[0])
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for k, line in enumerate(lines[1:], start=2):
        toks = line.split()
        if len(toks) != n or not all(t.isdigit() for t in toks):
            raise ParseError(f"line {k}: expected {n} non-negative integers")
        row = [int(t) for t in toks]
        if max(row) >= n:
            raise ParseError(f"line {k}: entry out of range 0..{n - 1}")
        rows.append(row)
    arr = np.array(rows, dtype=np.int64)
    ref = np.arange(n)
    if not (arr[0] == ref).all() or not (arr[:, 0] == ref).all():
        raise ParseError("element 0 is not the identity")
    return validate_table(arr)


def read_table(path) -> LoopTable:
    return parse_table(Path(path).read_text())


def write_table(L: LoopTable, path) -> None:
    Path(path).write_text(format_table(L))
