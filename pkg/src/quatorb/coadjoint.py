"""Dual-space machinery: the coadjoint action, Casimir, orbits, normal form.

The dual of the algebra is identified with the algebra itself through the
Euclidean scalar product, so a dual element is stored as the pair
``(pi, mu)`` with ``pi`` a quaternion (conjugate to the nu-directions) and
``mu`` a pure quaternion (intrinsic angular momentum).

``coad(g, x)`` applies, with the components of ``g`` plugged in directly,

    (pi, mu)  ->  (pi s^dagger, s (mu - q^dagger pi) s^dagger + <q, pi> e0)

which is the dual map of ``Ad(g^-1, .)``: the defining adjointness reads

    pairing(coad(g, x), v) == pairing(x, Ad(group_inv(g), v))

and consequently ``coad`` composes covariantly,
``coad(g, coad(g', x)) == coad(group_mul(g, g'), x)``.

The scalar part of the mu-output cancels analytically; it is checked to be
below ``PURITY_TOL * (1 + |x|)`` and then dropped.  Orbits come in two
types: spheres ``|mu| = const`` where ``pi = 0``, and 6-dimensional
bundles over the sphere ``|pi| = const`` otherwise; the bundle orbits
admit an explicit reduction to the representative ``(|pi| e0, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvariantViolationError
from .lie import AlgebraElement, GroupElement, exp_group
from .quaternion import (
    E0,
    PURE_ZERO,
    PureQuaternion,
    Quaternion,
    UnitQuaternion,
    conj,
    cross,
    embed,
    im,
    inner,
    mul,
)

#: |pi| at or below this is classified as the sphere (type-1) stratum.
ZERO_PI_TOL = 1e-12

#: Scale-relative bound on the residual scalar part of coad's mu-output.
PURITY_TOL = 1e-12


@dataclass(frozen=True)
class DualElement:
    """Point (pi, mu) of the dual space."""

    pi: Quaternion
    mu: PureQuaternion

    def norm(self) -> float:
        return math.sqrt(inner(self.pi, self.pi) + self.mu.dot(self.mu))

    def __add__(self, other: "DualElement") -> "DualElement":
        return DualElement(self.pi + other.pi, self.mu + other.mu)

    def __sub__(self, other: "DualElement") -> "DualElement":
        return DualElement(self.pi - other.pi, self.mu - other.mu)

    def __mul__(self, scalar) -> "DualElement":
        return DualElement(self.pi * scalar, self.mu * scalar)

    __rmul__ = __mul__

    @classmethod
    def zero(cls) -> "DualElement":
        return cls(Quaternion(0.0, 0.0, 0.0, 0.0), PURE_ZERO)


class OrbitKind(Enum):
    TYPE1_SPHERE = "type1_sphere"
    TYPE2_BUNDLE = "type2_bundle"


@dataclass(frozen=True)
class OrbitDescriptor:
    """Orbit classification: kind plus radius (|mu| for spheres, |pi| else)."""

    kind: OrbitKind
    radius: float

    def __post_init__(self):
        if self.radius < 0.0:
            raise DomainError("orbit radius must be nonnegative")
        if self.kind is OrbitKind.TYPE2_BUNDLE and self.radius <= 0.0:
            raise DomainError("bundle orbits require radius > 0")


class CoadjointTangent(NamedTuple):
    """Tangent vector (dpi, dmu) at a dual point."""

    dpi: Quaternion
    dmu: PureQuaternion


class NormalForm(NamedTuple):
    reducer: GroupElement
    reduced: DualElement


def pairing(x: DualElement, v: AlgebraElement) -> float:
    """Duality pairing <(pi, mu), (nu, xi)> = <pi, nu> + <mu, xi>."""
    return inner(x.pi, v.nu) + x.mu.dot(v.xi)


def _coad_mu_full(g: GroupElement, x: DualElement) -> Quaternion:
    s = g.s
    core = mul(mul(s, embed(x.mu) - mul(conj(g.q), x.pi)), conj(s))
    return core + inner(g.q, x.pi) * E0


def coad(g: GroupElement, x: DualElement) -> DualElement:
    """Coadjoint action of g on x (see module docstring for the formula)."""
    pi_out = mul(x.pi, conj(g.s))
    mu_full = _coad_mu_full(g, x)
    if abs(mu_full.w) > PURITY_TOL * (1.0 + x.norm()):
        raise InvariantViolationError(
            f"coadjoint mu-output has scalar part {mu_full.w!r}, "
            "beyond the purity tolerance")
    return DualElement(pi_out, im(mu_full))


def mu_purity_residual(g: GroupElement, x: DualElement) -> float:
    """Scale-relative scalar remnant of coad's mu-output (diagnostic)."""
    return abs(_coad_mu_full(g, x).w) / (1.0 + x.norm())


def ad_star(v: AlgebraElement, x: DualElement) -> DualElement:
    """Transpose of the bracket: <ad_star(v, x), w> = <x, [v, w]>."""
    dpi = mul(x.pi, embed(v.xi))
    dmu = 2.0 * cross(x.mu, v.xi) + im(mul(conj(v.nu), x.pi))
    return DualElement(dpi, dmu)


def infinitesimal_generator(v: AlgebraElement, x: DualElement) -> CoadjointTangent:
    """Generator of the coadjoint action, d/dt coad(exp(t v), x) at t = 0.

    Equals -ad_star(v, x): dpi = -pi xi and
    dmu = -(2 mu x xi + Im(nu^dagger pi)).
    """
    w = ad_star(v, x)
    return CoadjointTangent(-w.pi, -w.mu)


def casimir(x: DualElement) -> float:
    """The global Casimir |pi|^2, invariant under the coadjoint action."""
    return inner(x.pi, x.pi)


def classify(x: DualElement) -> OrbitDescriptor:
    """Orbit type of x: sphere stratum when |pi| <= ZERO_PI_TOL, bundle else.

    Classification near |pi| = 0 is numerically sensitive (the two orbit
    types are topologically distinct); callers that care should report
    |pi| alongside the type, as the CLI does.
    """
    pi_norm = x.pi.norm()
    if pi_norm <= ZERO_PI_TOL:
        return OrbitDescriptor(OrbitKind.TYPE1_SPHERE, x.mu.norm())
    return OrbitDescriptor(OrbitKind.TYPE2_BUNDLE, pi_norm)


def normal_form(x: DualElement) -> NormalForm:
    """Reducer g0 and reduced point coad(g0, x) = (|pi| e0, 0).

    The reducer is s0 = pi/|pi|, q0 = -pi mu / |pi|^2.  Undefined on the
    sphere stratum.
    """
    pi_norm = x.pi.norm()
    if pi_norm <= ZERO_PI_TOL:
        raise DomainError("normal form is undefined on the |pi| = 0 stratum")
    s0 = UnitQuaternion.from_quaternion(x.pi / pi_norm)
    q0 = mul(x.pi, embed(x.mu)) * (-1.0 / (pi_norm * pi_norm))
    g0 = GroupElement(q0, s0)
    return NormalForm(g0, coad(g0, x))


def orbit_point(rho: float, q: PureQuaternion, s: UnitQuaternion) -> DualElement:
    """Point (rho s^dagger, rho s q s^dagger) of the bundle orbit of (rho e0, 0).

    Pure q together with unit s parametrizes the whole orbit; the result
    always has Casimir rho^2.
    """
    if rho <= 0.0:
        raise DomainError("orbit_point requires rho > 0")
    sc = conj(s)
    pi = rho * sc
    mu = rho * im(mul(mul(s, embed(q)), sc))
    return DualElement(pi, mu)


def coad_fd_derivative(v: AlgebraElement, x: DualElement, h: float) -> CoadjointTangent:
    """Central-difference derivative of t -> coad(exp_group(t v), x) at 0."""
    xp = coad(exp_group(h * v), x)
    xm = coad(exp_group((-h) * v), x)
    inv = 1.0 / (2.0 * h)
    return CoadjointTangent((xp.pi - xm.pi) * inv, (xp.mu - xm.mu) * inv)


def dual_to_array(x: DualElement) -> np.ndarray:
    """Components in the order (mu1..mu3, pi0..pi3), dual to the algebra order."""
    return np.array([x.mu.x, x.mu.y, x.mu.z,
                     x.pi.w, x.pi.x, x.pi.y, x.pi.z])


def array_to_dual(arr) -> DualElement:
    a = [float(c) for c in arr]
    return DualElement(Quaternion(a[3], a[4], a[5], a[6]),
                       PureQuaternion(a[0], a[1], a[2]))


def orbit_report(x: DualElement) -> dict:
    """JSON-ready orbit report for a dual point."""
    desc = classify(x)
    report = {
        "pi": x.pi.tolist(),
        "mu": x.mu.tolist(),
        "kind": desc.kind.value,
        "radius": desc.radius,
        "pi_norm": x.pi.norm(),
        "casimir": casimir(x),
        "reducer": None,
    }
    if desc.kind is OrbitKind.TYPE2_BUNDLE:
        nf = normal_form(x)
        report["reducer"] = {"q0": nf.reducer.q.tolist(), "s0": nf.reducer.s.tolist()}
        report["reduced"] = {"pi": nf.reduced.pi.tolist(), "mu": nf.reduced.mu.tolist()}
    return report
