"""Quaternion arithmetic over H, the pure subspace H0 and the unit sphere S^3.

Conventions (fixed package-wide):

* component order is ``(w, x, y, z)``, i.e. coefficients along the basis
  ``e0, e1, e2, e3``; all serialized output uses this order;
* the Hamilton product with ``e1*e2 = e3`` (right-handed);
* all scalars are 64-bit floats;
* unit quaternions are validated at construction and never silently
  normalized -- renormalization is an explicit call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Absolute tolerance on | |s| - 1 | accepted by UnitQuaternion.
UNIT_NORM_TOL = 1e-12


def _require_finite(*components):
    # Fast path: a non-finite component makes the sum non-finite.
    s = 0.0
    for c in components:
        s += c
    if not math.isfinite(s):
        for c in components:
            if not math.isfinite(c):
                raise DomainError(f"non-finite component: {c!r}")


@dataclass(frozen=True)
class Quaternion:
    """Element of H with components (w, x, y, z) along (e0, e1, e2, e3)."""

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "w", self.w + 0.0)
        object.__setattr__(self, "x", self.x + 0.0)
        object.__setattr__(self, "y", self.y + 0.0)
        object.__setattr__(self, "z", self.z + 0.0)
        _require_finite(self.w, self.x, self.y, self.z)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return Quaternion(self.w * other, self.x * other,
                          self.y * other, self.z * other)

    def __rmul__(self, scalar) -> "Quaternion":
        return Quaternion(scalar * self.w, scalar * self.x,
                          scalar * self.y, scalar * self.z)

    def __truediv__(self, scalar) -> "Quaternion":
        return Quaternion(self.w / scalar, self.x / scalar,
                          self.y / scalar, self.z / scalar)

    def norm(self) -> float:
        return math.sqrt(self.w * self.w + self.x * self.x
                         + self.y * self.y + self.z * self.z)

    def tolist(self) -> list:
        """Serialized form: 4-element array [w, x, y, z]."""
        return [self.w, self.x, self.y, self.z]

    @classmethod
    def from_sequence(cls, seq) -> "Quaternion":
        w, x, y, z = seq
        return cls(w, x, y, z)


@dataclass(frozen=True)
class PureQuaternion:
    """Element of H0 (zero scalar part), identified with a 3-vector."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "x", self.x + 0.0)
        object.__setattr__(self, "y", self.y + 0.0)
        object.__setattr__(self, "z", self.z + 0.0)
        _require_finite(self.x, self.y, self.z)

    def __add__(self, other: "PureQuaternion") -> "PureQuaternion":
        return PureQuaternion(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "PureQuaternion") -> "PureQuaternion":
        return PureQuaternion(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "PureQuaternion":
        return PureQuaternion(-self.x, -self.y, -self.z)

    def __mul__(self, scalar) -> "PureQuaternion":
        return PureQuaternion(self.x * scalar, self.y * scalar, self.z * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "PureQuaternion":
        return PureQuaternion(self.x / scalar, self.y / scalar, self.z / scalar)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def dot(self, other: "PureQuaternion") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def tolist(self) -> list:
        """Serialized form: 3-element array [x, y, z]."""
        return [self.x, self.y, self.z]

    @classmethod
    def from_sequence(cls, seq) -> "PureQuaternion":
        x, y, z = seq
        return cls(x, y, z)


@dataclass(frozen=True)
class UnitQuaternion(Quaternion):
    """Quaternion validated to unit norm (within UNIT_NORM_TOL).

    Construction rejects non-unit input instead of normalizing it; use
    :func:`renormalize` where projection is intended.
    """

    def __post_init__(self):
        super().__post_init__()
        if abs(self.norm() - 1.0) > UNIT_NORM_TOL:
            raise DomainError(
                f"not a unit quaternion: |q| = {self.norm()!r} "
                f"(tolerance {UNIT_NORM_TOL})")

    def inverse(self) -> "UnitQuaternion":
        """Inverse of a unit quaternion, i.e. its conjugate."""
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "UnitQuaternion":
        return cls(q.w, q.x, q.y, q.z)


# Basis elements.
E0 = Quaternion(1.0, 0.0, 0.0, 0.0)
E1 = Quaternion(0.0, 1.0, 0.0, 0.0)
E2 = Quaternion(0.0, 0.0, 1.0, 0.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)
BASIS = (E0, E1, E2, E3)

P1 = PureQuaternion(1.0, 0.0, 0.0)
P2 = PureQuaternion(0.0, 1.0, 0.0)
P3 = PureQuaternion(0.0, 0.0, 1.0)
PURE_BASIS = (P1, P2, P3)

ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
PURE_ZERO = PureQuaternion(0.0, 0.0, 0.0)
UNIT_IDENTITY = UnitQuaternion(1.0, 0.0, 0.0, 0.0)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ab."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def conj(a: Quaternion) -> Quaternion:
    """Quaternion conjugate (negated pure part)."""
    return Quaternion(a.w, -a.x, -a.y, -a.z)


def inner(a: Quaternion, b: Quaternion) -> float:
    """Euclidean scalar product of the 4-component vectors."""
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z


def norm(a) -> float:
    """Euclidean norm; accepts Quaternion or PureQuaternion."""
    return a.norm()


def inverse(a: Quaternion) -> Quaternion:
    """Multiplicative inverse conj(a)/|a|^2; rejects the zero quaternion."""
    n2 = inner(a, a)
    if n2 == 0.0:
        raise DomainError("zero quaternion has no inverse")
    return Quaternion(a.w / n2, -a.x / n2, -a.y / n2, -a.z / n2)


def re(a: Quaternion) -> float:
    """Scalar (e0) part."""
    return a.w


def im(a: Quaternion) -> PureQuaternion:
    """Pure part of a quaternion."""
    return PureQuaternion(a.x, a.y, a.z)


def embed(xi: PureQuaternion) -> Quaternion:
    """Embedding of H0 into H with exactly zero scalar part."""
    return Quaternion(0.0, xi.x, xi.y, xi.z)


def cross(xi: PureQuaternion, eta: PureQuaternion) -> PureQuaternion:
    """3-vector cross product; equals (xi*eta - eta*xi)/2 in H.

    Component expressions match the pure part of :func:`mul` on embedded
    arguments term for term, so the decomposition
    ``xi*eta = -<xi,eta> e0 + xi x eta`` holds exactly in floating point.
    """
    return PureQuaternion(
        xi.y * eta.z - xi.z * eta.y,
        -xi.x * eta.z + xi.z * eta.x,
        xi.x * eta.y - xi.y * eta.x,
    )


def rotate(s: Quaternion, xi: PureQuaternion) -> PureQuaternion:
    """Rotation action s xi s^dagger of a unit quaternion on H0.

    The tiny scalar part produced by roundoff is discarded. Non-unit s
    (beyond UNIT_NORM_TOL) is rejected.
    """
    if abs(s.norm() - 1.0) > UNIT_NORM_TOL:
        raise DomainError(f"rotate requires a unit quaternion, got |s| = {s.norm()!r}")
    t = mul(mul(s, embed(xi)), conj(s))
    return PureQuaternion(t.x, t.y, t.z)


def renormalize(a: Quaternion) -> UnitQuaternion:
    """Explicit projection of a nonzero quaternion onto S^3."""
    n = a.norm()
    if n == 0.0:
        raise DomainError("cannot renormalize the zero quaternion")
    return UnitQuaternion(a.w / n, a.x / n, a.y / n, a.z / n)
