"""Bracket evaluators on the dual space and the base-bracket certificates.

The minus Lie-Poisson bracket of two scalar fields is

    {F, G}(x) = -pairing(x, [grad F(x), grad G(x)])

with gradients taken as algebra elements through the Euclidean pairing.
Evaluated on the coordinate functions (mu_i, pi_a) it reproduces the
canonical base brackets of the rigid-body picture with the group variable
read as pi (no |pi| = 1 restriction):

    {mu_i, mu_j} = -2 eps_ijk mu_k        {mu_i, pi_0} = pi_i
    {mu_i, pi_j} = -pi_0 d_ij - pi_k eps_ijk        {pi_a, pi_b} = 0

``base_bracket_table`` certifies this coincidence numerically at any
point.  Fields may carry analytic gradients (verified against central
differences on registration) and Hessians; nested-bracket checks such as
``jacobi_residual`` refuse fields without analytic derivatives because
nested finite differences lose too many digits.

Array layouts follow the package basis order: index 0..2 = mu/xi
components, 3..6 = pi/nu components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coadjoint import DualElement, ad_star, array_to_dual, dual_to_array, pairing
from .errors import GradientMismatchError, UnsupportedFieldError
from .lie import (
    ALGEBRA_BASIS,
    ALGEBRA_DIM,
    AlgebraElement,
    algebra_to_array,
    array_to_algebra,
    bracket,
)
from .quaternion import PureQuaternion, Quaternion, cross, embed, mul

GRAD_FD_STEP = 1e-5
REGISTRATION_TOL = 1e-5

#: Deterministic sample points used to vet declared gradients.
_CHECK_POINTS = (
    (0.3, -0.7, 0.45, 1.1, -0.2, 0.8, -1.3),
    (-1.2, 0.5, 0.9, -0.4, 1.6, -0.75, 0.25),
    (0.05, 1.4, -0.6, 0.35, -1.05, 0.15, 0.95),
)

_COORD_NAMES = ("mu1", "mu2", "mu3", "pi0", "pi1", "pi2", "pi3")


def fd_gradient(evaluate, x: DualElement, step: float = GRAD_FD_STEP) -> AlgebraElement:
    """Central-difference gradient of a scalar field at x."""
    arr = dual_to_array(x)
    out = np.empty(ALGEBRA_DIM)
    for i in range(ALGEBRA_DIM):
        shifted = arr.copy()
        shifted[i] = arr[i] + step
        fp = evaluate(array_to_dual(shifted))
        shifted[i] = arr[i] - step
        fm = evaluate(array_to_dual(shifted))
        out[i] = (fp - fm) / (2.0 * step)
    return array_to_algebra(out)


class ScalarField:
    """Scalar function on the dual space, with optional analytic derivatives.

    Parameters
    ----------
    evaluate : callable DualElement -> float
    gradient : callable DualElement -> AlgebraElement, optional
        When omitted, a central-difference gradient (step GRAD_FD_STEP) is
        substituted and the field is excluded from nested-bracket checks.
        When given, it is verified against finite differences at a few
        fixed points (within REGISTRATION_TOL relative); pass
        ``check=False`` to skip for fields with extreme derivatives.
    hessian : callable DualElement -> (7, 7) ndarray, optional
        Needed by nested brackets (Jacobi); maps in the package array
        layout.
    """

    def __init__(self, evaluate, gradient=None, hessian=None,
                 name: str = "field", check: bool = True):
        self.name = name
        self._evaluate = evaluate
        self._gradient = gradient
        self._hessian = hessian
        if gradient is not None and check:
            self._verify_gradient()

    def __call__(self, x: DualElement) -> float:
        return self._evaluate(x)

    evaluate = __call__

    @property
    def has_analytic_gradient(self) -> bool:
        return self._gradient is not None

    @property
    def has_hessian(self) -> bool:
        return self._hessian is not None

    def gradient(self, x: DualElement) -> AlgebraElement:
        if self._gradient is not None:
            return self._gradient(x)
        return fd_gradient(self._evaluate, x)

    def hessian(self, x: DualElement) -> np.ndarray:
        if self._hessian is None:
            raise UnsupportedFieldError(
                f"field {self.name!r} carries no analytic Hessian")
        return self._hessian(x)

    def _verify_gradient(self):
        for components in _CHECK_POINTS:
            x = array_to_dual(np.array(components))
            declared = algebra_to_array(self._gradient(x))
            numeric = algebra_to_array(fd_gradient(self._evaluate, x))
            err = float(np.linalg.norm(declared - numeric))
            if err > REGISTRATION_TOL * (1.0 + float(np.linalg.norm(declared))):
                raise GradientMismatchError(
                    f"declared gradient of {self.name!r} deviates from finite "
                    f"differences by {err:.3e}")


def coordinate_field(index: int) -> ScalarField:
    """Coordinate function mu1..mu3 (indices 0..2) or pi0..pi3 (3..6)."""
    basis_element = ALGEBRA_BASIS[index]
    zero = np.zeros((ALGEBRA_DIM, ALGEBRA_DIM))
    return ScalarField(
        lambda x, i=index: float(dual_to_array(x)[i]),
        gradient=lambda x, b=basis_element: b,
        hessian=lambda x, z=zero: z,
        name=_COORD_NAMES[index],
        check=False,
    )


_COORD_FIELDS = None


def coordinate_fields() -> tuple:
    """The 7 coordinate fields, cached."""
    global _COORD_FIELDS
    if _COORD_FIELDS is None:
        _COORD_FIELDS = tuple(coordinate_field(i) for i in range(ALGEBRA_DIM))
    return _COORD_FIELDS


def linear_field(a: AlgebraElement, name: str = "linear") -> ScalarField:
    """F(x) = pairing(x, a)."""
    arr = algebra_to_array(a)
    zero = np.zeros((ALGEBRA_DIM, ALGEBRA_DIM))
    return ScalarField(
        lambda x: float(dual_to_array(x) @ arr),
        gradient=lambda x: a,
        hessian=lambda x: zero,
        name=name,
        check=False,
    )


def quadratic_field(m: np.ndarray, name: str = "quadratic") -> ScalarField:
    """F(x) = (1/2) x^T m x in the package array layout; m must be symmetric."""
    m = np.asarray(m, dtype=float)
    if m.shape != (ALGEBRA_DIM, ALGEBRA_DIM):
        raise ValueError(f"expected a 7x7 matrix, got {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("quadratic form matrix must be symmetric")
    return ScalarField(
        lambda x: 0.5 * float(dual_to_array(x) @ m @ dual_to_array(x)),
        gradient=lambda x: array_to_algebra(m @ dual_to_array(x)),
        hessian=lambda x: m,
        name=name,
        check=False,
    )


def casimir_field() -> ScalarField:
    """|pi|^2 as a scalar field."""
    m = np.diag([0.0, 0.0, 0.0, 2.0, 2.0, 2.0, 2.0])
    return quadratic_field(m, name="casimir")


def product_field(f: ScalarField, g: ScalarField, name: str = None) -> ScalarField:
    """Pointwise product FG, with derivatives composed from the factors."""
    name = name or f"({f.name})*({g.name})"
    gradient = None
    hessian = None
    if f.has_analytic_gradient and g.has_analytic_gradient:
        def gradient(x):
            return f(x) * g.gradient(x) + g(x) * f.gradient(x)
        if f.has_hessian and g.has_hessian:
            def hessian(x):
                gf = algebra_to_array(f.gradient(x))
                gg = algebra_to_array(g.gradient(x))
                return (f(x) * g.hessian(x) + g(x) * f.hessian(x)
                        + np.outer(gf, gg) + np.outer(gg, gf))
    return ScalarField(lambda x: f(x) * g(x), gradient=gradient,
                       hessian=hessian, name=name, check=False)


def lie_poisson_bracket(f: ScalarField, g: ScalarField, x: DualElement) -> float:
    """Minus Lie-Poisson bracket -pairing(x, [grad F, grad G]) at x."""
    return -pairing(x, bracket(f.gradient(x), g.gradient(x)))


def bracket_field(f: ScalarField, g: ScalarField) -> ScalarField:
    """{F, G} as a field with an analytic gradient.

    Requires analytic gradients and Hessians on both factors; the gradient
    is -[grad F, grad G] + HF ad*_{grad G} x - HG ad*_{grad F} x.
    """
    if not (f.has_analytic_gradient and g.has_analytic_gradient
            and f.has_hessian and g.has_hessian):
        raise UnsupportedFieldError(
            f"nested bracket needs analytic gradient and Hessian on "
            f"{f.name!r} and {g.name!r}")

    def gradient(x):
        gf = f.gradient(x)
        gg = g.gradient(x)
        out = algebra_to_array(-bracket(gf, gg))
        out = out + f.hessian(x) @ dual_to_array(ad_star(gg, x))
        out = out - g.hessian(x) @ dual_to_array(ad_star(gf, x))
        return array_to_algebra(out)

    return ScalarField(lambda x: lie_poisson_bracket(f, g, x),
                       gradient=gradient,
                       name=f"{{{f.name},{g.name}}}", check=False)


def jacobi_residual(f: ScalarField, g: ScalarField, h: ScalarField,
                    x: DualElement) -> float:
    """|{F,{G,H}} + {G,{H,F}} + {H,{F,G}}| at x, fully analytic inside."""
    return abs(lie_poisson_bracket(f, bracket_field(g, h), x)
               + lie_poisson_bracket(g, bracket_field(h, f), x)
               + lie_poisson_bracket(h, bracket_field(f, g), x))


@dataclass(frozen=True)
class BracketReport:
    """One evaluated bracket against its closed form."""

    lhs: str
    rhs: str
    value: float
    expected: float
    residual: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residual", abs(self.value - self.expected))


def _levi(i: int, j: int, k: int) -> int:
    if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        return 1
    if (i, j, k) in ((2, 1, 0), (0, 2, 1), (1, 0, 2)):
        return -1
    return 0


def base_bracket_table(x: DualElement) -> list:
    """All coordinate-pair brackets at x against their closed forms.

    Families: (pi_a, pi_b) expected 0; (mu_i, pi_0) expected pi_i;
    (mu_i, pi_j) expected -pi_0 d_ij - pi_k eps_ijk; (mu_i, mu_j)
    expected -2 eps_ijk mu_k.
    """
    fields = coordinate_fields()
    mu = (x.mu.x, x.mu.y, x.mu.z)
    pi = (x.pi.w, x.pi.x, x.pi.y, x.pi.z)
    reports = []
    for a in range(4):
        for b in range(4):
            value = lie_poisson_bracket(fields[3 + a], fields[3 + b], x)
            reports.append(BracketReport(f"pi{a}", f"pi{b}", value, 0.0))
    for i in range(3):
        for a in range(4):
            value = lie_poisson_bracket(fields[i], fields[3 + a], x)
            if a == 0:
                expected = pi[1 + i]
            else:
                j = a - 1
                expected = -pi[0] * (1.0 if i == j else 0.0)
                for k in range(3):
                    e = _levi(i, j, k)
                    if e:
                        expected -= pi[1 + k] * e
            reports.append(BracketReport(f"mu{1 + i}", f"pi{a}", value, expected))
    for i in range(3):
        for j in range(3):
            value = lie_poisson_bracket(fields[i], fields[j], x)
            expected = 0.0
            for k in range(3):
                e = _levi(i, j, k)
                if e:
                    expected -= 2.0 * e * mu[k]
            reports.append(BracketReport(f"mu{1 + i}", f"mu{1 + j}", value, expected))
    return reports


def quaternionic_bracket_forms(x: DualElement, xi: PureQuaternion,
                               a: Quaternion, b: Quaternion) -> list:
    """Coordinate-free bracket identities checked componentwise at x.

    {mu, <mu,xi>} = 2 mu x xi and {pi, <mu,xi>} = pi xi, plus the vanishing
    bracket of two pi-linear functions <pi,a>, <pi,b>.
    """
    fields = coordinate_fields()
    f_xi = linear_field(AlgebraElement(Quaternion(0.0, 0.0, 0.0, 0.0), xi),
                        name="<mu,xi>")
    reports = []
    expected_mu = 2.0 * cross(x.mu, xi)
    for i, comp in enumerate(expected_mu.tolist()):
        value = lie_poisson_bracket(fields[i], f_xi, x)
        reports.append(BracketReport(f"mu{1 + i}", "<mu,xi>", value, comp))
    expected_pi = mul(x.pi, embed(xi))
    for idx, comp in enumerate(expected_pi.tolist()):
        value = lie_poisson_bracket(fields[3 + idx], f_xi, x)
        reports.append(BracketReport(f"pi{idx}", "<mu,xi>", value, comp))
    zero_pure = PureQuaternion(0.0, 0.0, 0.0)
    f_a = linear_field(AlgebraElement(a, zero_pure), name="<pi,a>")
    f_b = linear_field(AlgebraElement(b, zero_pure), name="<pi,b>")
    reports.append(BracketReport("<pi,a>", "<pi,b>",
                                 lie_poisson_bracket(f_a, f_b, x), 0.0))
    return reports


def write_bracket_csv(reports, stream):
    """CSV dump of bracket reports: lhs,rhs,value,expected,residual."""
    stream.write("lhs,rhs,value,expected,residual\n")
    for r in reports:
        stream.write(f"{r.lhs},{r.rhs},{r.value:.17g},{r.expected:.17g},"
                     f"{r.residual:.17g}\n")
