"""Symplectic loops, power maps and code loops over GF(2).

Vectors of V = GF(2)^k are ``k``-bit integers, addition is XOR.  A power map
P: V -> GF(2) with P(0) = 0 is stored as a 0/1 array of length 2^k.

For a code loop the commutator and associator maps are the second and third
derived forms of P.  ``cdeg`` is the combinatorial degree, which over GF(2) is
the degree of the algebraic normal form of P: the coefficient of the monomial
on a set T of coordinates is exactly the derived form f_|T| evaluated on the
corresponding basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import (
    CdegTooHigh,
    ConstructionFailed,
    DeltaNotQuadratic,
    NotApplicable,
    ParseError,
)
from .constructions import (
    DihedralParams,
    apply,
    make_cyclic_params,
    make_dihedral_params,
)
from .loop import LoopTable, associator_subloop, nucleus, quotient, squares

# ---------------------------------------------------------------- GF(2) helpers


def popcount(v: int) -> int:
    return bin(v).count("1")


def reduced_basis(vectors) -> list[int]:
    """Reduced echelon basis of the span, pivots descending."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = [min(b, b ^ v) for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def span(basis) -> list[int]:
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return sorted(out)


def _anf(values: np.ndarray) -> np.ndarray:
    """Moebius transform: ANF coefficient of each monomial (as a bitmask)."""
    a = values.astype(np.uint8).copy()
    n = len(a)
    step = 1
    while step < n:
        a = a.reshape(-1, 2 * step)
        a[:, step:] ^= a[:, :step]
        a = a.reshape(n)
        step *= 2
    return a


# ---------------------------------------------------------------- power maps


@dataclass(frozen=True)
class PowerMap:
    k: int
    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) & 1 for v in self.values)
        if len(vals) != 2**self.k:
            raise ValueError(f"expected {2**self.k} values, got {len(vals)}")
        if vals[0]:
            raise ValueError("P(0) must be 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, k: int) -> "PowerMap":
        return cls(k, (0,) * 2**k)

    @classmethod
    def from_function(cls, k: int, fn) -> "PowerMap":
        return cls(k, tuple(fn(v) for v in range(2**k)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def __call__(self, v: int) -> int:
        return self.values[v]

    def __add__(self, other: "PowerMap") -> "PowerMap":
        if self.k != other.k:
            raise ValueError("power maps on different spaces")
        return PowerMap(self.k, tuple(a ^ b for a, b in zip(self.values, other.values)))

    __sub__ = __add__

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> frozenset:
        return frozenset(v for v, b in enumerate(self.values) if b)

    def anf(self) -> dict:
        coeffs = _anf(self.array)
        return {int(m): 1 for m in np.flatnonzero(coeffs)}

    def to_text(self) -> str:
        return f"{self.k}\n{''.join(str(b) for b in self.values)}\n"

    @classmethod
    def from_text(cls, text: str) -> "PowerMap":
        lines = text.split()
        if len(lines) != 2 or not lines[0].isdigit() or set(lines[1]) - {"0", "1"}:
            raise ParseError("power map must be 'k' then a line of 2^k bits")
        k = int(lines[0])
        if len(lines[1]) != 2**k:
            raise ParseError(f"expected {2**k} bits, got {len(lines[1])}")
        if lines[1][0] != "0":
            raise ParseError("P(0) must be 0")
        return cls(k, tuple(int(c) for c in lines[1]))


def read_power_map(path) -> PowerMap:
    return PowerMap.from_text(Path(path).read_text())


def derived_form(P: PowerMap, *vs: int) -> int:
    """Sum of P over the XOR of every nonempty subset of the arguments."""
    total = 0
    for r in range(1, len(vs) + 1):
        for sub in combinations(vs, r):
            acc = 0
            for v in sub:
                acc ^= v
            total ^= P(acc)
    return total


def derived_table(P: PowerMap, n: int) -> np.ndarray:
    """All values of the n-th derived form as an n-dimensional 0/1 array."""
    V = np.arange(2**P.k)
    vals = P.array
    axes = [V.reshape([-1 if i == j else 1 for j in range(n)]) for i in range(n)]
    out = np.zeros([2**P.k] * n, dtype=np.int64)
    for r in range(1, n + 1):
        for sub in combinations(range(n), r):
            acc = np.zeros([1] * n, dtype=np.int64)
            for i in sub:
                acc = acc ^ axes[i]
            out ^= vals[acc]
    return out


def cdeg(P: PowerMap) -> int:
    coeffs = _anf(P.array)
    mons = np.flatnonzero(coeffs)
    return max((popcount(int(m)) for m in mons), default=0)


def form_radical(form: np.ndarray) -> list[int]:
    """Basis of {v : form(v, ...) == 0 identically} for a multilinear 0/1 array."""
    flat = form.reshape(form.shape[0], -1)
    return reduced_basis(np.flatnonzero(~flat.any(axis=1)).tolist())


def radical(P: PowerMap) -> list[int]:
    if cdeg(P) > 3:
        raise CdegTooHigh(f"cdeg {cdeg(P)} > 3")
    return form_radical(derived_table(P, 3))


def bilinear_matrix(P: PowerMap) -> np.ndarray:
    """Second derived form as a full 2^k x 2^k table."""
    return derived_table(P, 2)


# ---------------------------------------------------------------- trilinear forms


@dataclass(frozen=True, eq=False)
class TrilinearForm:
    k: int
    values: np.ndarray

    @classmethod
    def from_power_map(cls, P: PowerMap) -> "TrilinearForm":
        if cdeg(P) > 3:
            raise CdegTooHigh(f"cdeg {cdeg(P)} > 3")
        return cls(P.k, derived_table(P, 3))

    def on_basis(self) -> np.ndarray:
        e = 1 << np.arange(self.k)
        return self.values[np.ix_(e, e, e)]

    def radical(self) -> list[int]:
        return form_radical(self.values)

    def is_trilinear(self) -> bool:
        """Check additivity in the first slot; symmetry gives the other two."""
        V = np.arange(2**self.k)
        f = self.values
        if not (np.array_equal(f, f.transpose(1, 0, 2)) and np.array_equal(f, f.transpose(0, 2, 1))):
            return False
        lhs = f[V[:, None] ^ V[None, :]]
        return bool(np.array_equal(lhs, f[:, None] ^ f[None, :]))

    def slice_ranks(self) -> list[int]:
        return sorted(_rank2(self.values[v]) for v in range(2**self.k))


def _rank2(M: np.ndarray) -> int:
    """Rank over GF(2) of a bilinear form given as a full 2^k x 2^k table."""
    k = int(np.log2(M.shape[0]))
    rows = [int(sum(int(M[1 << i, 1 << j]) << j for j in range(k))) for i in range(k)]
    return len(reduced_basis(rows))


def trilinear_equivalent(A: TrilinearForm, B: TrilinearForm):
    """Images of the basis vectors under a linear bijection g with
    A(gu, gv, gw) = B(u, v, w), or None if the forms are not equivalent."""
    if A.k != B.k:
        return None
    if len(A.radical()) != len(B.radical()) or A.slice_ranks() != B.slice_ranks():
        return None
    k = A.k
    Bb = B.on_basis()
    rankA = [_rank2(A.values[v]) for v in range(2**k)]
    rankB = [_rank2(B.values[1 << i]) for i in range(k)]
    f = A.values

    def extend(images: list[int]):
        i = len(images)
        if i == k:
            return list(images)
        spanned = set(span(images))
        for v in range(1, 2**k):
            if v in spanned or rankA[v] != rankB[i]:
                continue
            cand = images + [v]
            ok = all(
                f[cand[a], cand[b], v] == Bb[a, b, i]
                for a in range(i + 1)
                for b in range(i + 1)
            )
            if ok:
                found = extend(cand)
                if found is not None:
                    return found
        return None

    return extend([])


# ---------------------------------------------------------------- symplectic loops


@dataclass(frozen=True, eq=False)
class SymplecticData:
    loop: LoopTable
    z: int
    k: int
    vec_of: np.ndarray
    P: PowerMap
    C: np.ndarray
    A: np.ndarray

    @property
    def Z(self) -> frozenset:
        return frozenset({0, self.z})

    def elements_of(self, vectors) -> frozenset:
        """Preimage in the loop of a set of vectors."""
        want = np.zeros(2**self.k, dtype=bool)
        want[list(vectors)] = True
        return frozenset(np.flatnonzero(want[self.vec_of]).tolist())

    def rep(self, v: int) -> int:
        return int(np.flatnonzero(self.vec_of == v)[0])


def _coordinates(Q: LoopTable) -> tuple[int, np.ndarray] | None:
    """Label an elementary abelian 2-group by bit vectors, greedy least-index basis."""
    n = Q.order
    k = n.bit_length() - 1
    if 2**k != n or not Q.is_associative or not Q.is_commutative or np.diagonal(Q.table).any():
        return None
    vec = np.full(n, -1, dtype=np.int64)
    vec[0] = 0
    basis = []
    for q in range(1, n):
        if vec[q] >= 0:
            continue
        bit = 1 << len(basis)
        basis.append(q)
        known = np.flatnonzero(vec >= 0)
        vec[Q.table[known, q]] = vec[known] ^ bit
    return k, vec


def _power_data(L: LoopTable, z: int, vec_of: np.ndarray, k: int):
    T = L.table
    reps = np.array([int(np.flatnonzero(vec_of == v)[0]) for v in range(2**k)])
    P = (np.diagonal(T)[reps] == z).astype(np.int64)
    C = (L.commutators[np.ix_(reps, reps)] == z).astype(np.int64)
    A = (L.associators[np.ix_(reps, reps, reps)] == z).astype(np.int64)
    return PowerMap(k, tuple(P.tolist())), C, A


def symplectic_analyze(L: LoopTable) -> SymplecticData | None:
    T = L.table
    for z in range(1, L.order):
        if not L.center_mask[z] or T[z, z] != 0:
            continue
        Q, part = quotient(L, {0, z})
        coords = _coordinates(Q)
        if coords is None:
            continue
        k, qvec = coords
        vec_of = qvec[part.index_of]
        vec_of.setflags(write=False)
        P, C, A = _power_data(L, z, vec_of, k)
        return SymplecticData(L, z, k, vec_of, P, C, A)
    return None


def is_code_loop(L: LoopTable) -> bool:
    """Symplectic and Moufang; cross-checked against Moufang with at most two squares.

    The trivial loop passes the second test but has no central subloop of
    order 2, so it is not counted as a code loop.
    """
    if L.order == 1:
        return False
    a = L.is_moufang and symplectic_analyze(L) is not None
    b = L.is_moufang and len(squares(L)) <= 2
    assert a == b, "code loop criteria disagree"
    return a


def code_structure_consistent(sd: SymplecticData) -> bool:
    """C equals the second and A the third derived form of P."""
    return bool(
        np.array_equal(sd.C, derived_table(sd.P, 2)) and np.array_equal(sd.A, derived_table(sd.P, 3))
    )


def associator_form(L: LoopTable) -> TrilinearForm | None:
    """The associator map of L on L/N(L), when |A(L)| = 2 and L/N(L) is an
    elementary abelian 2-group; otherwise None."""
    A = associator_subloop(L)
    if len(A) != 2:
        return None
    a = max(A)
    N = nucleus(L)
    Q, part = quotient(L, N)
    coords = _coordinates(Q)
    if coords is None:
        return None
    k, qvec = coords
    vec_of = qvec[part.index_of]
    reps = np.array([int(np.flatnonzero(vec_of == v)[0]) for v in range(2**k)])
    vals = (L.associators[np.ix_(reps, reps, reps)] == a).astype(np.int64)
    return TrilinearForm(k, vals)


# ---------------------------------------------------------------- deltas


@dataclass(frozen=True)
class PowerDelta:
    delta: PowerMap
    quotient_order: int
    cdeg: int
    expected_support: frozenset

    @property
    def support_matches(self) -> bool:
        return self.delta.support() == self.expected_support


def power_in_coordinates(L: LoopTable, sd: SymplecticData) -> PowerMap:
    """Power map of L read through another loop's coordinates on the same set."""
    T = L.table
    vals = [int(T[sd.rep(v), sd.rep(v)] == sd.z) for v in range(2**sd.k)]
    return PowerMap(sd.k, tuple(vals))


def power_delta(L: LoopTable, Lstar: LoopTable, p) -> PowerDelta:
    sd = symplectic_analyze(L)
    if sd is None or not L.is_moufang:
        raise NotApplicable("the loop is not a code loop")
    if p.h != sd.z:
        raise NotApplicable("h is not the central involution of the code loop")
    delta = power_in_coordinates(Lstar, sd) - sd.P
    Svec = frozenset(int(v) for v in np.unique(sd.vec_of[sorted(p.S)]))
    allv = frozenset(range(2**sd.k))
    nq = len(p.partition.cosets)
    if nq == 2:
        expected = allv - Svec
    elif nq == 4 and isinstance(p, DihedralParams):
        a_elem = p.loop.mul(p.beta, p.gamma)
        coset = p.partition.coset(a_elem)
        expected = frozenset(int(v) for v in np.unique(sd.vec_of[list(coset)]))
    else:
        raise NotApplicable(f"G/S of order {nq} cannot occur for h in F")
    return PowerDelta(delta, nq, cdeg(delta), expected)


# ---------------------------------------------------------------- building code loops


def code_factor_set(P: PowerMap) -> np.ndarray:
    """A normalized factor set eta on V whose extension is the code loop of P.

    With a_i, b_ij, c_ijl the ANF coefficients of P,

        eta(x, y) = sum a_i x_i y_i + sum_{i<j} b_ij x_i y_j
                    + sum_{i<j<l} c_ijl (x_i y_j y_l + x_j y_i y_l + x_l y_i y_j)
    """
    k = P.k
    if cdeg(P) > 3:
        raise CdegTooHigh(f"cdeg {cdeg(P)} > 3")
    V = np.arange(2**k)
    bit = [(V >> i) & 1 for i in range(k)]
    x = [b[:, None] for b in bit]
    y = [b[None, :] for b in bit]
    eta = np.zeros((2**k, 2**k), dtype=np.int64)
    for m in P.anf():
        idx = [i for i in range(k) if m >> i & 1]
        if len(idx) == 1:
            (i,) = idx
            eta ^= x[i] & y[i]
        elif len(idx) == 2:
            i, j = idx
            eta ^= x[i] & y[j]
        else:
            i, j, l = idx
            eta ^= (x[i] & y[j] & y[l]) ^ (x[j] & y[i] & y[l]) ^ (x[l] & y[i] & y[j])
    return eta


def build_code_loop(P: PowerMap) -> LoopTable:
    """Code loop on V x GF(2); element (v, a) has index 2v + a and the central
    involution is 1."""
    eta = code_factor_set(P)
    n = 2**P.k
    v = np.arange(n)
    a = np.arange(2)
    X = v[:, None, None, None]
    A_ = a[None, :, None, None]
    Y = v[None, None, :, None]
    B = a[None, None, None, :]
    T = 2 * (X ^ Y) + (A_ ^ B ^ eta[X, Y])
    L = LoopTable(T.reshape(2 * n, 2 * n))
    sd = symplectic_analyze(L)
    if not L.is_moufang or sd is None or sd.z != 1 or power_in_coordinates(L, standard_coordinates(L, P.k)) != P:
        raise ConstructionFailed("built table does not realize the power map")
    return L


def standard_coordinates(L: LoopTable, k: int) -> SymplecticData:
    """Coordinates of a loop built by build_code_loop: index 2v + a."""
    vec_of = np.arange(2 * 2**k) // 2
    vec_of.setflags(write=False)
    P, C, A = _power_data(L, 1, vec_of, k)
    return SymplecticData(L, 1, k, vec_of, P, C, A)


# ---------------------------------------------------------------- planning paths


def symplectic_decomposition(B: np.ndarray) -> tuple[list[tuple[int, int]], list[int]]:
    """Split an alternating form (full 2^k x 2^k table) into hyperbolic planes
    (x, y) with B(x, y) = 1 and a radical basis; least vectors first."""
    rem = list(range(B.shape[0]))
    planes = []
    while True:
        pair = None
        for x in rem:
            ys = [y for y in rem if B[x, y]]
            if ys:
                pair = (x, ys[0])
                break
        if pair is None:
            return planes, reduced_basis(rem)
        x, y = pair
        planes.append(pair)
        rem = [v for v in rem if not B[v, x] and not B[v, y]]


@dataclass(frozen=True)
class CodeStep:
    kind: str
    W: tuple
    x: int = 0
    y: int = 0
    delta: PowerMap | None = None


def plan_code_path(P: PowerMap, R: PowerMap) -> list[CodeStep]:
    """Steps turning the code loop of P into that of R, each with its delta."""
    delta = R - P
    if cdeg(delta) > 2:
        raise DeltaNotQuadratic(f"cdeg(R - P) = {cdeg(delta)} > 2")
    k = P.k
    V = range(2**k)
    B = derived_table(delta, 2)
    planes, _ = symplectic_decomposition(B)
    steps = []
    acc = PowerMap.zero(k)
    for x, y in planes:
        W = tuple(v for v in V if not B[v, x] and not B[v, y])
        alpha = {v ^ x ^ y for v in W}
        q = PowerMap.from_function(k, lambda v: int(v in alpha))
        steps.append(CodeStep("dihedral", W, x, y, q))
        acc = acc + q
    lin = delta - acc
    if not lin.is_zero():
        W = tuple(v for v in V if not lin(v))
        x = min(v for v in V if lin(v))
        steps.append(CodeStep("cyclic", W, x, 0, lin))
    return steps


def step_params(L: LoopTable, k: int, step: CodeStep):
    sd = standard_coordinates(L, k)
    S = sd.elements_of(step.W)
    if step.kind == "cyclic":
        return make_cyclic_params(L, S, sd.rep(step.x), sd.z)
    return make_dihedral_params(L, S, sd.rep(step.x), sd.rep(step.y), sd.z)


def execute_code_path(P: PowerMap, steps: list[CodeStep]) -> list[LoopTable]:
    """Loops visited along the path, starting with the code loop of P."""
    L = build_code_loop(P)
    out = [L]
    for step in steps:
        L = apply(step_params(L, P.k, step))
        out.append(L)
    return out


def final_power_map(P: PowerMap, loops: list[LoopTable]) -> PowerMap:
    return power_in_coordinates(loops[-1], standard_coordinates(loops[-1], P.k))

