"""The orbit symplectic form, its primitive, and the cotangent-bundle map.

On a coadjoint orbit the canonical 2-form evaluated on the generators of
two algebra elements v, v' is

    omega_x(v, v') = -pairing(x, [v, v'])

On bundle (type-2) orbits it is exact: omega = -d theta with
theta_x(v) = -<mu, xi>, which is well defined there because the generator
determines xi when pi != 0.  ``d_theta_numeric`` certifies the exactness
by finite differences, and ``phi`` realizes the orbit as the cotangent
bundle of the sphere |pi| = rho via the covector -(1/rho^2) pi mu at base
point pi; the primitive pulls back to the Liouville form up to a global
sign that is calibrated once at a reference point (``liouville_sign``).

Directional derivatives use central differences along the coadjoint flow
t -> coad(exp_group(t v), x); steps outside (0, FD_STEP_MAX], or steps so
small that a roundoff estimate exceeds FD_CANCELLATION_LIMIT, raise
StepSizeError.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coadjoint import DualElement, coad, normal_form, pairing
from .errors import DomainError, StepSizeError
from .lie import (
    ALGEBRA_BASIS,
    Ad,
    AlgebraElement,
    GroupElement,
    bracket,
    exp_group,
    group_inv,
)
from .quaternion import (
    E0,
    PureQuaternion,
    Quaternion,
    embed,
    inner,
    mul,
)

FD_STEP_DEFAULT = 1e-4
FD_STEP_MAX = 1e-3
FD_CANCELLATION_LIMIT = 2.5e-7

_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class CotangentPoint:
    """Base point on the sphere |pi| = rho plus a covector representative.

    The covector pairs with ambient tangent vectors through the Euclidean
    scalar product; the stored representative is reduced orthogonal to the
    base point (the reduction never changes a pairing with a tangent).
    """

    base: Quaternion
    covec: Quaternion

    def __post_init__(self):
        if self.base.norm() <= 0.0:
            raise DomainError("cotangent base point must be nonzero")

    @property
    def radius(self) -> float:
        return self.base.norm()

    @classmethod
    def reduced(cls, base: Quaternion, covec: Quaternion) -> "CotangentPoint":
        r2 = inner(base, base)
        if r2 <= 0.0:
            raise DomainError("cotangent base point must be nonzero")
        return cls(base, covec - (inner(covec, base) / r2) * base)


def kks_form(x: DualElement, v: AlgebraElement, vp: AlgebraElement) -> float:
    """Orbit 2-form -pairing(x, [v, v']); bilinear and antisymmetric."""
    return -pairing(x, bracket(v, vp))


def _require_type2(x: DualElement, what: str) -> float:
    pi_norm = x.pi.norm()
    if pi_norm <= 1e-12:
        raise DomainError(f"{what} is only defined on orbits with |pi| > 0")
    return pi_norm


def theta(x: DualElement, v: AlgebraElement) -> float:
    """Primitive 1-form on bundle orbits, -<mu, xi>; ignores nu."""
    _require_type2(x, "theta")
    return -x.mu.dot(v.xi)


def _check_step(h: float):
    if not (0.0 < h <= FD_STEP_MAX):
        raise StepSizeError(f"finite-difference step must be in (0, {FD_STEP_MAX}], got {h!r}")


def _central_difference(f, h: float) -> float:
    """(f(h) - f(-h)) / 2h with a roundoff-amplification estimate."""
    fp = f(h)
    fm = f(-h)
    cancellation = _EPS * max(abs(fp), abs(fm)) / (2.0 * h)
    if cancellation > FD_CANCELLATION_LIMIT:
        raise StepSizeError(
            f"step {h!r} too small for the magnitudes involved "
            f"(roundoff estimate {cancellation:.2e})")
    return (fp - fm) / (2.0 * h)


def _flow(x: DualElement, v: AlgebraElement, t: float) -> DualElement:
    return coad(exp_group(t * v), x)


def d_theta_numeric(x: DualElement, v: AlgebraElement, vp: AlgebraElement,
                    h: float = FD_STEP_DEFAULT) -> float:
    """Finite-difference exterior derivative of theta on generator fields.

    Evaluates d_v theta(v') - d_v' theta(v) + theta_x([v, v']-generator),
    where the last term uses the relation between generator commutators
    and the algebra bracket (the generator map is an anti-homomorphism).
    Together with :func:`kks_form` this certifies omega = -d theta:
    the sum d_theta_numeric + kks_form vanishes to FD accuracy.
    """
    _require_type2(x, "d_theta_numeric")
    _check_step(h)

    def theta_along(direction, fixed_xi):
        def f(t):
            y = _flow(x, direction, t)
            return -y.mu.dot(fixed_xi)
        return f

    term1 = _central_difference(theta_along(v, vp.xi), h)
    term2 = _central_difference(theta_along(vp, v.xi), h)
    w = bracket(v, vp)
    term3 = -x.mu.dot(w.xi)
    return term1 - term2 + term3


def d_omega_numeric(x: DualElement, v1: AlgebraElement, v2: AlgebraElement,
                    v3: AlgebraElement, h: float = FD_STEP_DEFAULT) -> float:
    """Finite-difference exterior derivative of the orbit 2-form (closedness).

    Should vanish identically; the residual measures FD truncation plus
    the Jacobi identity at work.
    """
    _check_step(h)
    total = 0.0
    for va, vb, vc in ((v1, v2, v3), (v2, v3, v1), (v3, v1, v2)):
        total += _central_difference(lambda t, a=va, b=vb, c=vc:
                                     kks_form(_flow(x, a, t), b, c), h)
        total += kks_form(x, bracket(va, vb), vc)
    return total


def phi(x: DualElement) -> CotangentPoint:
    """Cotangent realization: base pi, covector -(1/rho^2) pi mu (reduced)."""
    pi_norm = _require_type2(x, "phi")
    rho2 = pi_norm * pi_norm
    covec = mul(x.pi, embed(x.mu)) * (-1.0 / rho2)
    return CotangentPoint.reduced(x.pi, covec)


@lru_cache(maxsize=1)
def liouville_sign() -> int:
    """Global sign relating the pulled-back Liouville form to theta.

    Calibrated once at the reference point x = (e0, e3), v = (0, eps3),
    where both candidate values are +-1; the sign s satisfies
    <covec, d/dt base> = s * theta to FD accuracy.
    """
    x = DualElement(E0, PureQuaternion(0.0, 0.0, 1.0))
    v = AlgebraElement(Quaternion(0.0, 0.0, 0.0, 0.0), PureQuaternion(0.0, 0.0, 1.0))
    value = _liouville_pairing(x, v, FD_STEP_DEFAULT)
    th = theta(x, v)
    return 1 if abs(value - th) <= abs(value + th) else -1


def _liouville_pairing(x: DualElement, v: AlgebraElement, h: float) -> float:
    """<covec(x), d/dt base(coad-flow of v)> at t = 0, by central differences."""
    c0 = phi(x)

    def component(idx):
        def f(t):
            return _flow(x, v, t).pi.tolist()[idx]
        return f

    base_dot = Quaternion(*(_central_difference(component(i), h) for i in range(4)))
    return inner(c0.covec, base_dot)


def liouville_pullback_residual(x: DualElement, v: AlgebraElement,
                                h: float = FD_STEP_DEFAULT) -> float:
    """|<covec, d/dt base> - sign * theta| along the coadjoint flow of v.

    The sign is the calibrated :func:`liouville_sign`; a small residual at
    generic points certifies that phi pulls the Liouville form back to the
    orbit primitive (up to that global sign).
    """
    _require_type2(x, "liouville_pullback_residual")
    _check_step(h)
    return abs(_liouville_pairing(x, v, h) - liouville_sign() * theta(x, v))


def tangent_basis(x: DualElement) -> list:
    """Six algebra elements whose generators span the orbit tangent at x.

    Obtained by transporting, with Ad of the inverse reducer, the standard
    complement of the stabilizer direction at the reduced point
    (|pi| e0, 0); only defined on bundle orbits.
    """
    nf = normal_form(x)
    ginv = group_inv(nf.reducer)
    complement = [ALGEBRA_BASIS[k] for k in (0, 1, 2, 4, 5, 6)]
    return [Ad(ginv, b) for b in complement]


def kks_gram(x: DualElement, basis=None) -> np.ndarray:
    """Gram matrix of the orbit 2-form over a tangent-spanning basis."""
    vs = tangent_basis(x) if basis is None else basis
    n = len(vs)
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            gram[i, j] = kks_form(x, vs[i], vs[j])
    return gram


def theta_kernel_shift(x: DualElement, scale: float) -> AlgebraElement:
    """An algebra element with zero generator at x: (scale * pi, 0).

    With power-of-two scales the generator vanishes exactly in floating
    point, which makes the well-definedness check of theta exact.
    """
    _require_type2(x, "theta_kernel_shift")
    return AlgebraElement(scale * x.pi, PureQuaternion(0.0, 0.0, 0.0))
