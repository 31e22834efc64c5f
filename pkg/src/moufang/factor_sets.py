"""Extensions of a cyclic group A = Z/k by a loop Q, given by a factor set.

The extension lives on Q x A with

    (x, a)(y, b) = (xy, phi(y) a + b + eta(x, y))

where phi(y) is a unit mod k acting by multiplication.  Element (x, a) has
index ``x * k + a``.  Factor sets are normalized: eta(x, 0) = eta(0, x) = 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .constructions import CyclicParams, DihedralParams, apply
from .errors import ActionMismatch, InvalidParams, NotALoop, NotMoufang
from .loop import LoopTable, quotient, subloop_generated
from .sigma_arith import sigma


@dataclass(frozen=True, eq=False)
class Action:
    quotient: LoopTable
    k: int
    phi: tuple

    def __post_init__(self):
        Q = self.quotient
        ph = np.asarray(self.phi, dtype=np.int64) % self.k
        if ph.shape != (Q.order,):
            raise InvalidParams("phi needs one multiplier per element of Q")
        if any(np.gcd(int(u), self.k) != 1 for u in ph) and self.k > 1:
            raise InvalidParams("multipliers must be units mod k")
        if not np.array_equal(ph[Q.table], (ph[:, None] * ph[None, :]) % self.k):
            raise InvalidParams("phi is not a homomorphism")

    @classmethod
    def trivial(cls, Q: LoopTable, k: int) -> "Action":
        return cls(Q, k, (1,) * Q.order)

    @property
    def mult(self) -> np.ndarray:
        return np.asarray(self.phi, dtype=np.int64) % self.k

    def same_as(self, other: "Action") -> bool:
        return self.k == other.k and self.quotient == other.quotient and self.phi == other.phi


class FactorSetClass(enum.IntEnum):
    NOT_FACTOR_SET = 0
    FACTOR_SET = 1
    MOUFANG = 2
    ASSOCIATIVE = 3


@dataclass(frozen=True, eq=False)
class FactorSet:
    action: Action
    eta: np.ndarray

    def __post_init__(self):
        n = self.action.quotient.order
        eta = np.asarray(self.eta, dtype=np.int64) % self.action.k
        if eta.shape != (n, n):
            raise InvalidParams("eta must be |Q| x |Q|")
        eta.setflags(write=False)
        object.__setattr__(self, "eta", eta)

    def __add__(self, other: "FactorSet") -> "FactorSet":
        if not self.action.same_as(other.action):
            raise ActionMismatch("factor sets over different actions")
        return FactorSet(self.action, self.eta + other.eta)

    def __neg__(self) -> "FactorSet":
        return FactorSet(self.action, -self.eta)

    def __sub__(self, other: "FactorSet") -> "FactorSet":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.eta.any()

    @property
    def is_normalized(self) -> bool:
        return not self.eta[0].any() and not self.eta[:, 0].any()


def build_extension(fs: FactorSet) -> LoopTable:
    if not fs.is_normalized:
        raise NotALoop("eta(x, 1) and eta(1, x) must vanish")
    Q, k = fs.action.quotient, fs.action.k
    n = Q.order
    x = np.arange(n)[:, None, None, None]
    a = np.arange(k)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    b = np.arange(k)[None, None, None, :]
    c = (fs.action.mult[y] * a + b + fs.eta[x, y]) % k
    return LoopTable((Q.table[x, y] * k + c).reshape(n * k, n * k))


def _triples(n):
    return np.arange(n)[:, None, None], np.arange(n)[None, :, None], np.arange(n)[None, None, :]


def satisfies_associative(fs: FactorSet) -> bool:
    T, e, u, k = fs.action.quotient.table, fs.eta, fs.action.mult, fs.action.k
    x, y, z = _triples(len(T))
    lhs = u[z] * e[x, y] + e[T[x, y], z]
    rhs = e[y, z] + e[x, T[y, z]]
    return bool(((lhs - rhs) % k == 0).all())


def satisfies_moufang(fs: FactorSet) -> bool:
    T, e, u, k = fs.action.quotient.table, fs.eta, fs.action.mult, fs.action.k
    x, y, z = _triples(len(T))
    xy = T[x, y]
    xz = T[x, z]
    lhs = u[xz] * e[x, y] + u[z] * e[xy, x] + e[T[xy, x], z]
    rhs = e[x, z] + e[y, xz] + e[x, T[y, xz]]
    return bool(((lhs - rhs) % k == 0).all())


def classify(fs: FactorSet) -> FactorSetClass:
    """Strongest label whose defining identity holds.

    The associative label only looks at the cocycle identity; it does not ask
    Q itself to be a group.
    """
    if not fs.is_normalized:
        return FactorSetClass.NOT_FACTOR_SET
    if satisfies_associative(fs):
        return FactorSetClass.ASSOCIATIVE
    if satisfies_moufang(fs):
        return FactorSetClass.MOUFANG
    return FactorSetClass.FACTOR_SET


def check_inverse_identity(fs: FactorSet) -> bool:
    """eta(x, x^-1) == phi(x^-1) eta(x^-1, x) for every x."""
    if not fs.is_normalized or not satisfies_moufang(fs):
        raise NotMoufang("the inverse identity is only claimed for Moufang factor sets")
    Q = fs.action.quotient
    x = np.arange(Q.order)
    xi = Q.right_inverse
    lhs = fs.eta[x, xi]
    rhs = fs.action.mult[xi] * fs.eta[xi, x]
    return bool(((lhs - rhs) % fs.action.k == 0).all())


def check_associator_preservation(eta: FactorSet, mu: FactorSet) -> bool:
    """mu(x.yz, [x,y,z]) == 0 for all x, y, z in Q."""
    if not eta.action.same_as(mu.action):
        raise ActionMismatch("eta and mu must share the action")
    Q = mu.action.quotient
    T = Q.table
    x, y, z = _triples(Q.order)
    return not mu.eta[T[x, T[y, z]], Q.associators].any()


@dataclass(frozen=True, eq=False)
class TransversalData:
    """Factor sets read off a loop through the transversal of least coset elements.

    ``theta[x * k + a]`` is the element pi(x) h^a; it is an isomorphism from
    the extension by ``eta`` onto the loop and from the extension by
    ``eta_star`` onto the constructed loop.
    """

    eta: FactorSet
    eta_star: FactorSet
    mu: FactorSet
    theta: np.ndarray
    A: frozenset


def derive_from_transversal(L: LoopTable, p) -> TransversalData:
    if p.loop != L:
        raise InvalidParams("parameters belong to a different loop")
    h = p.h
    A = subloop_generated(L, [h])
    k = len(A)
    T = L.table
    hp = [0]
    for _ in range(k - 1):
        hp.append(int(T[hp[-1], h]))
    hp = np.array(hp)
    log = np.full(L.order, -1, dtype=np.int64)
    log[hp] = np.arange(k)

    Q, part = quotient(L, A)
    pi = np.array([c[0] for c in part.cosets])
    n = Q.order
    prod = T[pi[:, None], pi[None, :]]
    tau = log[L.ldiv[prod, pi[Q.table]]]
    if (tau < 0).any():
        raise InvalidParams("transversal products leave the subloop generated by h")
    eta = (-tau) % k

    if isinstance(p, CyclicParams):
        phi = np.ones(n, dtype=np.int64)
        I = p.coset_index[pi]
        extra = sigma(I[:, None] + I[None, :], p.window)
    elif isinstance(p, DihedralParams):
        r = p.parity[pi]
        phi = np.where(r == 1, k - 1, 1) if k > 1 else np.ones(n, dtype=np.int64)
        s = sigma(p.left_index[pi][:, None] + p.right_index[pi][None, :], p.window)
        extra = (1 - 2 * r[None, :]) * s
    else:
        raise InvalidParams("unknown parameter type")

    act = Action(Q, k, tuple(int(u) for u in phi))
    fs = FactorSet(act, eta)
    fs_star = FactorSet(act, eta + extra)
    theta = T[pi[:, None], hp[None, :]].ravel()
    return TransversalData(fs, fs_star, fs_star - fs, theta, A)


def theta_is_isomorphism(td: TransversalData, ext: LoopTable, target: LoopTable) -> bool:
    th = td.theta
    return bool(np.array_equal(th[ext.table], target.table[th[:, None], th[None, :]]))


def coboundary(action: Action, f) -> FactorSet:
    """delta f (x, y) = phi(y) f(x) + f(y) - f(xy).

    Associative whenever Q is a group and f(1) = 0; over a nonassociative Q it
    usually is not.
    """
    f = np.asarray(f, dtype=np.int64)
    Q = action.quotient
    eta = action.mult[None, :] * f[:, None] + f[None, :] - f[Q.table]
    return FactorSet(action, eta)


def verify_transversal(L: LoopTable, p) -> dict:
    """Run every check the factor-set picture promises for one parameter tuple."""
    td = derive_from_transversal(L, p)
    star = apply(p)
    ext = build_extension(td.eta)
    ext_star = build_extension(td.eta_star)
    return {
        "eta_iso": theta_is_isomorphism(td, ext, L),
        "eta_star_iso": theta_is_isomorphism(td, ext_star, star),
        "mu_class": classify(td.mu).name,
        "eta_class": classify(td.eta).name,
        "inverse_identity": check_inverse_identity(td.eta),
        "associators_preserved": check_associator_preservation(td.eta, td.mu),
    }
