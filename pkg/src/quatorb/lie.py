"""The 7-dimensional Lie algebra H0 (+) H and the matrix group S^3 x| H.

An algebra element is a pair ``(nu, xi)`` with ``nu`` a full quaternion and
``xi`` a pure quaternion; a group element is a pair ``(q, s)`` with
``q`` a quaternion and ``s`` a unit quaternion.  The group multiplies as

    (q, s) (q', s') = (q' + q s', s s')

which makes the quaternion factor a normal Abelian subgroup acted on by
S^3 from the right.

Basis ordering used for indices, arrays and the structure-constant table:

    0, 1, 2  -> pure directions (xi along e1, e2, e3)
    3, 4, 5, 6 -> quaternion directions (nu along e0, e1, e2, e3)

The bracket is

    [(nu, xi), (nu', xi')] = (nu xi' - nu' xi, 2 xi x xi')

whose structure constants are exact small integers in this basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .quaternion import (
    E0,
    PURE_ZERO,
    UNIT_IDENTITY,
    ZERO,
    PureQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    cross,
    embed,
    inner,
    mul,
    rotate,
)

ALGEBRA_DIM = 7

#: Below this pure-part norm, exp_group switches to series expansions.
EXP_SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True)
class AlgebraElement:
    """Element (nu, xi) of the Lie algebra H0 (+) H."""

    nu: Quaternion
    xi: PureQuaternion

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.nu + other.nu, self.xi + other.xi)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.nu - other.nu, self.xi - other.xi)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.nu, -self.xi)

    def __mul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.nu * scalar, self.xi * scalar)

    __rmul__ = __mul__

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls(ZERO, PURE_ZERO)


@dataclass(frozen=True)
class GroupElement:
    """Element (q, s) of the group S^3 x| H."""

    q: Quaternion
    s: UnitQuaternion

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(ZERO, UNIT_IDENTITY)


def algebra_basis() -> tuple:
    """The 7 basis elements in the package's index order."""
    pures = (PureQuaternion(1.0, 0.0, 0.0),
             PureQuaternion(0.0, 1.0, 0.0),
             PureQuaternion(0.0, 0.0, 1.0))
    eps = tuple(AlgebraElement(ZERO, p) for p in pures)
    es = tuple(AlgebraElement(Quaternion(*c), PURE_ZERO)
               for c in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    return eps + es


ALGEBRA_BASIS = algebra_basis()


def bracket(v: AlgebraElement, vp: AlgebraElement) -> AlgebraElement:
    """Lie bracket (nu xi' - nu' xi, 2 xi x xi')."""
    nu_out = mul(v.nu, embed(vp.xi)) - mul(vp.nu, embed(v.xi))
    xi_out = 2.0 * cross(v.xi, vp.xi)
    return AlgebraElement(nu_out, xi_out)


def _levi_civita(i: int, j: int, k: int) -> int:
    if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        return 1
    if (i, j, k) in ((2, 1, 0), (0, 2, 1), (1, 0, 2)):
        return -1
    return 0


@lru_cache(maxsize=1)
def structure_constants() -> np.ndarray:
    """Dense table c[i, j, k] of structure constants, exact integers.

    Built from the closed-form basis relations (independently of the
    quaternionic bracket):

        [eps_i, eps_j] = 2 eps_ijk eps_k
        [eps_i, e_0]   = -e_i
        [eps_i, e_j]   = delta_ij e_0 + eps_ijk e_k
        [e_a, e_b]     = 0
    """
    c = np.zeros((ALGEBRA_DIM, ALGEBRA_DIM, ALGEBRA_DIM), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                e = _levi_civita(i, j, k)
                if e:
                    c[i, j, k] = 2 * e
    for i in range(3):
        c[i, 3, 4 + i] = -1
        c[3, i, 4 + i] = 1
        for j in range(3):
            if i == j:
                c[i, 4 + j, 3] += 1
                c[4 + j, i, 3] -= 1
            for k in range(3):
                e = _levi_civita(i, j, k)
                if e:
                    c[i, 4 + j, 4 + k] += e
                    c[4 + j, i, 4 + k] -= e
    c.setflags(write=False)
    return c


def structure_constant_records() -> list:
    """Nonzero structure constants as JSON-ready {i, j, k, c} records."""
    c = structure_constants()
    records = []
    for i in range(ALGEBRA_DIM):
        for j in range(ALGEBRA_DIM):
            for k in range(ALGEBRA_DIM):
                if c[i, j, k]:
                    records.append({"i": i, "j": j, "k": k, "c": int(c[i, j, k])})
    return records


def group_mul(g: GroupElement, gp: GroupElement) -> GroupElement:
    """Group product (q' + q s', s s')."""
    return GroupElement(gp.q + mul(g.q, gp.s),
                        UnitQuaternion.from_quaternion(mul(g.s, gp.s)))


def group_inv(g: GroupElement) -> GroupElement:
    """Group inverse (-q s^-1, s^-1)."""
    s_inv = g.s.inverse()
    return GroupElement(-mul(g.q, s_inv), s_inv)


def inner_auto(g: GroupElement, gp: GroupElement) -> GroupElement:
    """Inner automorphism g g' g^-1, via its closed form ((q'-q+qs')s^-1, ss's^-1)."""
    s_inv = g.s.inverse()
    q_part = mul(gp.q - g.q + mul(g.q, gp.s), s_inv)
    s_part = mul(mul(g.s, gp.s), s_inv)
    return GroupElement(q_part, UnitQuaternion.from_quaternion(s_part))


def Ad(g: GroupElement, v: AlgebraElement) -> AlgebraElement:
    """Adjoint action ((nu + q xi) s^dagger, s xi s^dagger)."""
    nu_out = mul(v.nu + mul(g.q, embed(v.xi)), conj(g.s))
    xi_out = rotate(g.s, v.xi)
    return AlgebraElement(nu_out, xi_out)


def ad(v: AlgebraElement, vp: AlgebraElement) -> AlgebraElement:
    """Infinitesimal adjoint action; identical to the bracket."""
    return bracket(v, vp)


def exp_group(v: AlgebraElement) -> GroupElement:
    """Group exponential (nu phi(xi), exp(xi)).

    Here exp(xi) = cos|xi| e0 + sin|xi| xi/|xi| and
    phi(xi) = (exp(xi) - e0) xi^-1 = sinc|xi| e0 + (1-cos|xi|)/|xi|^2 xi,
    with series fallbacks below EXP_SERIES_THRESHOLD so both coefficients
    stay accurate through xi -> 0 (phi(0) = e0).
    """
    t = v.xi.norm()
    if t < EXP_SERIES_THRESHOLD:
        t2 = t * t
        cos_t = math.cos(t)
        sinc = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        k = 0.5 - t2 / 24.0 + t2 * t2 / 720.0
    else:
        cos_t = math.cos(t)
        sinc = math.sin(t) / t
        half_sin = math.sin(0.5 * t)
        k = 2.0 * half_sin * half_sin / (t * t)
    s = UnitQuaternion(cos_t, sinc * v.xi.x, sinc * v.xi.y, sinc * v.xi.z)
    phi = Quaternion(sinc, k * v.xi.x, k * v.xi.y, k * v.xi.z)
    return GroupElement(mul(v.nu, phi), s)


def algebra_inner(v: AlgebraElement, vp: AlgebraElement) -> float:
    """Invariant scalar product <xi, xi'> + <nu, nu'>."""
    return v.xi.dot(vp.xi) + inner(v.nu, vp.nu)


def algebra_norm(v: AlgebraElement) -> float:
    return math.sqrt(algebra_inner(v, v))


def algebra_to_array(v: AlgebraElement) -> np.ndarray:
    """Components in the basis order (xi1..xi3, nu0..nu3)."""
    return np.array([v.xi.x, v.xi.y, v.xi.z,
                     v.nu.w, v.nu.x, v.nu.y, v.nu.z])


def array_to_algebra(arr) -> AlgebraElement:
    a = [float(c) for c in arr]
    return AlgebraElement(Quaternion(a[3], a[4], a[5], a[6]),
                          PureQuaternion(a[0], a[1], a[2]))
