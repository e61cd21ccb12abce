"""Seeded property-check suite with machine-readable reports.

Every invariant the library promises is checked here as a named property
with a fixed tolerance and a nominal trial count.  Randomness is fully
reproducible: a root numpy SeedSequence is spawned once per registered
check (in registry order), so any subset of checks, run with the same
seed, sees exactly the same draws; reports carry no timestamps and are
byte-identical across runs.

Two report conventions for checks whose natural statement is a lower
bound: the nondegeneracy and injectivity residuals are reciprocals
(1/sigma_min, 1/distance), so "residual <= tolerance" still reads as a
pass.  The convergence-order residual is the distance of the observed
step-halving error ratios from 16.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import coadjoint, dynamics, lie, poisson, quaternion, symplectic
from ._backend import backend_name
from .coadjoint import DualElement
from .errors import ConfigError
from .lie import AlgebraElement, GroupElement
from .quaternion import PureQuaternion, Quaternion, UnitQuaternion

FD_STEP = symplectic.FD_STEP_DEFAULT


# ---------------------------------------------------------------------------
# samplers

def random_quaternion(rng, scale: float = 1.0) -> Quaternion:
    c = rng.standard_normal(4) * scale
    return Quaternion(c[0], c[1], c[2], c[3])


def random_pure(rng, scale: float = 1.0) -> PureQuaternion:
    c = rng.standard_normal(3) * scale
    return PureQuaternion(c[0], c[1], c[2])


def random_unit(rng) -> UnitQuaternion:
    while True:
        c = rng.standard_normal(4)
        n = math.sqrt(float(c @ c))
        if n > 1e-6:
            return UnitQuaternion(c[0] / n, c[1] / n, c[2] / n, c[3] / n)


def random_group(rng) -> GroupElement:
    return GroupElement(random_quaternion(rng), random_unit(rng))


def random_algebra(rng) -> AlgebraElement:
    return AlgebraElement(random_quaternion(rng), random_pure(rng))


def random_direction(rng) -> AlgebraElement:
    """Random algebra element of unit invariant norm.

    Finite-difference derivative checks sample directions on the unit
    sphere: their truncation error grows with the cube of the direction
    norm, which would otherwise just measure the sampling tail.
    """
    while True:
        v = random_algebra(rng)
        n = lie.algebra_norm(v)
        if n > 1e-6:
            return (1.0 / n) * v


def random_dual(rng) -> DualElement:
    return DualElement(random_quaternion(rng), random_pure(rng))


def random_type2_dual(rng, lo: float = 0.1, hi: float = 10.0) -> DualElement:
    """Dual point with |pi| log-uniform in [lo, hi]."""
    rho = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    u = random_unit(rng)
    return DualElement(Quaternion(rho * u.w, rho * u.x, rho * u.y, rho * u.z),
                       random_pure(rng))


# ---------------------------------------------------------------------------
# report plumbing

@dataclass(frozen=True)
class PropertyResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class Check:
    name: str
    nominal_trials: int
    tolerance: float
    fn: Callable
    scales: bool = True  # whether --trials rescales the sweep


@dataclass
class VerificationReport:
    seed: int
    trials: int
    backend: str
    conventions: dict
    properties: list
    all_pass: bool

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "backend": self.backend,
            "conventions": self.conventions,
            "properties": [
                {"name": p.name, "trials": p.trials,
                 "max_residual": p.max_residual, "tolerance": p.tolerance,
                 "pass": p.passed}
                for p in self.properties
            ],
            "all_pass": self.all_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def text_lines(self) -> list:
        lines = [f"backend: {self.backend}",
                 f"seed: {self.seed}  trials scale: {self.trials}"]
        for key in sorted(self.conventions):
            lines.append(f"convention {key}: {self.conventions[key]}")
        for p in self.properties:
            status = "PASS" if p.passed else "FAIL"
            lines.append(f"{status}  {p.name:<42s} trials={p.trials:<5d} "
                         f"max_residual={p.max_residual:.6e} tol={p.tolerance:.1e}")
        n_pass = sum(1 for p in self.properties if p.passed)
        verdict = "PASS" if self.all_pass else "FAIL"
        lines.append(f"result: {verdict} ({n_pass}/{len(self.properties)})")
        return lines


# ---------------------------------------------------------------------------
# quaternion substrate

def _check_associativity(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        a, b, c = (random_quaternion(rng) for _ in range(3))
        lhs = quaternion.mul(quaternion.mul(a, b), c)
        rhs = quaternion.mul(a, quaternion.mul(b, c))
        scale = max(a.norm() * b.norm() * c.norm(), 1e-300)
        worst = max(worst, (lhs - rhs).norm() / scale)
    return worst


def _check_norm_multiplicative(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        a, b = random_quaternion(rng), random_quaternion(rng)
        scale = max(a.norm() * b.norm(), 1e-300)
        worst = max(worst, abs(quaternion.mul(a, b).norm() - a.norm() * b.norm()) / scale)
    return worst


def _check_inner_adjoint(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        a, b, q = (random_quaternion(rng) for _ in range(3))
        left = abs(quaternion.inner(a, quaternion.mul(q, b))
                   - quaternion.inner(quaternion.mul(quaternion.conj(q), a), b))
        right = abs(quaternion.inner(a, quaternion.mul(b, q))
                    - quaternion.inner(quaternion.mul(a, quaternion.conj(q)), b))
        worst = max(worst, left, right)
    return worst


def _check_pure_product_split(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        xi, eta = random_pure(rng), random_pure(rng)
        prod = quaternion.mul(quaternion.embed(xi), quaternion.embed(eta))
        expected = quaternion.Quaternion(-xi.dot(eta), 0.0, 0.0, 0.0) \
            + quaternion.embed(quaternion.cross(xi, eta))
        diff = prod - expected
        worst = max(worst, abs(diff.w), abs(diff.x), abs(diff.y), abs(diff.z))
    return worst


def _check_rotation_composition(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        s, sp = random_unit(rng), random_unit(rng)
        xi = random_pure(rng)
        once = quaternion.rotate(s, quaternion.rotate(sp, xi))
        both = quaternion.rotate(
            quaternion.renormalize(quaternion.mul(s, sp)), xi)
        worst = max(worst, (once - both).norm())
    return worst


# ---------------------------------------------------------------------------
# algebra / group structure

def _check_structure_antisymmetry(rng, n, tol):
    c = lie.structure_constants()
    worst = 0
    for i in range(lie.ALGEBRA_DIM):
        for j in range(lie.ALGEBRA_DIM):
            for k in range(lie.ALGEBRA_DIM):
                worst = max(worst, abs(int(c[i, j, k]) + int(c[j, i, k])))
    return float(worst)


def _check_jacobi_basis(rng, n, tol):
    c = lie.structure_constants()
    dim = lie.ALGEBRA_DIM
    worst = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                for out in range(dim):
                    total = 0
                    for m in range(dim):
                        total += int(c[j, k, m]) * int(c[i, m, out])
                        total += int(c[k, i, m]) * int(c[j, m, out])
                        total += int(c[i, j, m]) * int(c[k, m, out])
                    worst = max(worst, abs(total))
    return float(worst)


def _check_bracket_vs_table(rng, n, tol):
    c = lie.structure_constants()
    basis = lie.ALGEBRA_BASIS
    worst = 0.0
    for i in range(lie.ALGEBRA_DIM):
        for j in range(i + 1, lie.ALGEBRA_DIM):
            via_bracket = lie.algebra_to_array(lie.bracket(basis[i], basis[j]))
            via_table = np.array([float(c[i, j, k]) for k in range(lie.ALGEBRA_DIM)])
            worst = max(worst, float(np.max(np.abs(via_bracket - via_table))))
    return worst


def _check_jacobi_random(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        u, v, w = (random_algebra(rng) for _ in range(3))
        total = lie.bracket(u, lie.bracket(v, w)) \
            + lie.bracket(v, lie.bracket(w, u)) \
            + lie.bracket(w, lie.bracket(u, v))
        worst = max(worst, lie.algebra_norm(total))
    return worst


def _check_ad_homomorphism(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        g, gp = random_group(rng), random_group(rng)
        v = random_algebra(rng)
        lhs = lie.Ad(lie.group_mul(g, gp), v)
        rhs = lie.Ad(g, lie.Ad(gp, v))
        worst = max(worst, lie.algebra_norm(lhs - rhs))
    return worst


def _check_ad_derivative(rng, n, tol):
    h = FD_STEP
    worst = 0.0
    for _ in range(n):
        v, vp = random_direction(rng), random_algebra(rng)
        plus = lie.Ad(lie.exp_group(h * v), vp)
        minus = lie.Ad(lie.exp_group((-h) * v), vp)
        fd = (1.0 / (2.0 * h)) * (plus - minus)
        worst = max(worst, lie.algebra_norm(fd - lie.ad(v, vp)))
    return worst


def _group_distance(g: GroupElement, gp: GroupElement) -> float:
    return (g.q - gp.q).norm() + (g.s - gp.s).norm()


def _check_group_axioms(rng, n, tol):
    identity = GroupElement.identity()
    worst = 0.0
    for _ in range(n):
        g, gp, gpp = (random_group(rng) for _ in range(3))
        assoc = _group_distance(lie.group_mul(lie.group_mul(g, gp), gpp),
                                lie.group_mul(g, lie.group_mul(gp, gpp)))
        inv = _group_distance(lie.group_mul(g, lie.group_inv(g)), identity)
        auto = _group_distance(
            lie.inner_auto(g, gp),
            lie.group_mul(lie.group_mul(g, gp), lie.group_inv(g)))
        worst = max(worst, assoc, inv, auto)
    return worst


# ---------------------------------------------------------------------------
# coadjoint machinery

def _check_duality_pairing(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        g, x, v = random_group(rng), random_dual(rng), random_algebra(rng)
        lhs = coadjoint.pairing(coadjoint.coad(g, x), v)
        rhs = coadjoint.pairing(x, lie.Ad(lie.group_inv(g), v))
        worst = max(worst, abs(lhs - rhs))
    return worst


def _check_coad_composition(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        g, gp, x = random_group(rng), random_group(rng), random_dual(rng)
        lhs = coadjoint.coad(lie.group_mul(g, gp), x)
        rhs = coadjoint.coad(g, coadjoint.coad(gp, x))
        worst = max(worst, (lhs - rhs).norm())
    return worst


def _check_generator_fd(rng, n, tol):
    h = FD_STEP
    worst = 0.0
    for _ in range(n):
        v, x = random_direction(rng), random_dual(rng)
        fd = coadjoint.coad_fd_derivative(v, x, h)
        gen = coadjoint.infinitesimal_generator(v, x)
        worst = max(worst, (fd.dpi - gen.dpi).norm() + (fd.dmu - gen.dmu).norm())
    return worst


def _check_casimir_invariance(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        g, x = random_group(rng), random_dual(rng)
        worst = max(worst, abs(coadjoint.casimir(coadjoint.coad(g, x))
                               - coadjoint.casimir(x)))
    return worst


def _check_casimir_flow_derivative(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        v, x = random_algebra(rng), random_dual(rng)
        gen = coadjoint.infinitesimal_generator(v, x)
        worst = max(worst, abs(2.0 * quaternion.inner(x.pi, gen.dpi)))
    return worst


def _check_type1_radius(rng, n, tol):
    zero = Quaternion(0.0, 0.0, 0.0, 0.0)
    worst = 0.0
    for _ in range(n):
        g = random_group(rng)
        x = DualElement(zero, random_pure(rng))
        y = coadjoint.coad(g, x)
        worst = max(worst, y.pi.norm(), abs(y.mu.norm() - x.mu.norm()))
    return worst


def _check_mu_purity(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        g, x = random_group(rng), random_type2_dual(rng)
        worst = max(worst, coadjoint.mu_purity_residual(g, x))
    return worst


def _reduction_residual(x: DualElement) -> float:
    nf = coadjoint.normal_form(x)
    target = DualElement(Quaternion(x.pi.norm(), 0.0, 0.0, 0.0),
                         PureQuaternion(0.0, 0.0, 0.0))
    return (nf.reduced - target).norm() / (1.0 + x.norm())


def _check_normal_form(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        worst = max(worst, _reduction_residual(random_type2_dual(rng)))
    return worst


def _check_orbit_point_roundtrip(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        rho = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
        x = coadjoint.orbit_point(rho, random_pure(rng), random_unit(rng))
        worst = max(worst, _reduction_residual(x),
                    abs(coadjoint.casimir(x) - rho * rho) / (1.0 + rho * rho))
    return worst


# ---------------------------------------------------------------------------
# symplectic structure

def _check_kks_antisym_bilinear(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_dual(rng)
        v, vp, w = (random_algebra(rng) for _ in range(3))
        a, b = rng.standard_normal(2)
        antis = abs(symplectic.kks_form(x, v, vp) + symplectic.kks_form(x, vp, v))
        lin = abs(symplectic.kks_form(x, a * v + b * w, vp)
                  - a * symplectic.kks_form(x, v, vp)
                  - b * symplectic.kks_form(x, w, vp))
        worst = max(worst, antis, lin)
    return worst


def _check_nondegeneracy(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        gram = symplectic.kks_gram(x)
        sigma_min = float(np.linalg.svd(gram, compute_uv=False)[-1])
        worst = max(worst, 1.0 / sigma_min)
    return worst


def _check_closedness(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        v1, v2, v3 = (random_direction(rng) for _ in range(3))
        worst = max(worst, abs(symplectic.d_omega_numeric(x, v1, v2, v3, FD_STEP)))
    return worst


def _check_exactness(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        v, vp = random_direction(rng), random_direction(rng)
        worst = max(worst, abs(symplectic.kks_form(x, v, vp)
                               + symplectic.d_theta_numeric(x, v, vp, FD_STEP)))
    return worst


def _check_theta_well_defined(rng, n, tol):
    # theta ignores the nu slot and the kernel shift leaves xi untouched
    # (adding an exact zero), so the difference must be identically zero.
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        v = random_algebra(rng)
        shift = symplectic.theta_kernel_shift(x, float(2.0 ** rng.integers(-2, 4)))
        gen_shift = coadjoint.infinitesimal_generator(shift, x)
        worst = max(worst,
                    gen_shift.dpi.norm(),
                    abs(symplectic.theta(x, v) - symplectic.theta(x, v + shift)))
    return worst


def _check_kernel_generator(rng, n, tol):
    # The mu-generator of a kernel direction (c pi, 0) cancels analytically
    # (Im(conj(pi) pi) = 0); floating point leaves a few-ulp remnant that
    # scales with c |pi|^2, hence the scale-relative residual.
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        scale = float(2.0 ** rng.integers(-2, 4))
        shift = symplectic.theta_kernel_shift(x, scale)
        gen = coadjoint.infinitesimal_generator(shift, x)
        denom = scale * (1.0 + coadjoint.casimir(x))
        worst = max(worst, gen.dmu.norm() / denom)
    return worst


def _check_cotangent_pairing(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        xi = random_pure(rng)
        c = symplectic.phi(x)
        tangent = quaternion.mul(x.pi, quaternion.embed(xi))
        worst = max(worst, abs(quaternion.inner(c.covec, tangent) + x.mu.dot(xi)))
    return worst


def _check_phi_injectivity(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        rho = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
        x1 = coadjoint.orbit_point(rho, random_pure(rng), random_unit(rng))
        x2 = coadjoint.orbit_point(rho, random_pure(rng), random_unit(rng))
        if (x1 - x2).norm() < 1e-6:
            continue
        c1, c2 = symplectic.phi(x1), symplectic.phi(x2)
        dist = math.sqrt((c1.base - c2.base).norm() ** 2
                         + (c1.covec - c2.covec).norm() ** 2)
        worst = max(worst, 1.0 / dist)
    return worst


def _check_liouville(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        v = random_direction(rng)
        worst = max(worst, symplectic.liouville_pullback_residual(x, v, FD_STEP))
    return worst


# ---------------------------------------------------------------------------
# Poisson brackets

def _random_quadratic(rng, name):
    a = rng.standard_normal((lie.ALGEBRA_DIM, lie.ALGEBRA_DIM))
    return poisson.quadratic_field(a + a.T, name=name)


def _check_poisson_antisym_bilinear(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_dual(rng)
        f = poisson.linear_field(random_algebra(rng), name="F")
        g = _random_quadratic(rng, "G")
        h = poisson.linear_field(random_algebra(rng), name="H")
        a, b = rng.standard_normal(2)

        def combo(y, f=f, h=h, a=a, b=b):
            return a * f(y) + b * h(y)

        combo_field = poisson.ScalarField(
            combo,
            gradient=lambda y, f=f, h=h, a=a, b=b: a * f.gradient(y) + b * h.gradient(y),
            name="aF+bH", check=False)
        antis = abs(poisson.lie_poisson_bracket(f, g, x)
                    + poisson.lie_poisson_bracket(g, f, x))
        lin = abs(poisson.lie_poisson_bracket(combo_field, g, x)
                  - a * poisson.lie_poisson_bracket(f, g, x)
                  - b * poisson.lie_poisson_bracket(h, g, x))
        worst = max(worst, antis, lin)
    return worst


def _check_leibniz(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_dual(rng)
        f = poisson.linear_field(random_algebra(rng), name="F")
        g = _random_quadratic(rng, "G")
        h = _random_quadratic(rng, "H")
        fg = poisson.product_field(f, g)
        lhs = poisson.lie_poisson_bracket(fg, h, x)
        rhs = f(x) * poisson.lie_poisson_bracket(g, h, x) \
            + g(x) * poisson.lie_poisson_bracket(f, h, x)
        worst = max(worst, abs(lhs - rhs))
    return worst


def _check_coincidence(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        reports = poisson.base_bracket_table(random_dual(rng))
        worst = max(worst, max(r.residual for r in reports))
    return worst


def _check_quaternionic_forms(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        reports = poisson.quaternionic_bracket_forms(
            random_dual(rng), random_pure(rng),
            random_quaternion(rng), random_quaternion(rng))
        worst = max(worst, max(r.residual for r in reports))
    return worst


def _check_jacobi_quadratic(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_dual(rng)
        f = _random_quadratic(rng, "F")
        g = _random_quadratic(rng, "G")
        h = _random_quadratic(rng, "H")
        worst = max(worst, poisson.jacobi_residual(f, g, h, x))
    return worst


def _check_casimir_central(rng, n, tol):
    cas = poisson.casimir_field()
    worst = 0.0
    for _ in range(n):
        x = random_type2_dual(rng)
        fields = (poisson.linear_field(random_algebra(rng), name="F"),
                  _random_quadratic(rng, "G"),
                  dynamics.hamiltonian_field(dynamics.InertiaSpec(1.0, 2.0, 3.0)))
        for f in fields:
            worst = max(worst, abs(poisson.lie_poisson_bracket(cas, f, x)))
    return worst


# ---------------------------------------------------------------------------
# dynamics

def _check_lp_field_closed_form(rng, n, tol):
    worst = 0.0
    for _ in range(n):
        x = random_dual(rng)
        inertia = dynamics.InertiaSpec(*(rng.uniform(0.5, 3.0, 3)))
        dpi, dmu = dynamics.lie_poisson_vector_field(x, inertia)
        xi = dynamics.body_angular_rate(x.mu, inertia)
        dpi_closed = quaternion.mul(x.pi, quaternion.embed(xi))
        dmu_closed = 2.0 * quaternion.cross(x.mu, xi)
        worst = max(worst, (dpi - dpi_closed).norm() + (dmu - dmu_closed).norm())
    return worst


def _reference_run(rng, formulation, integrator):
    mu = random_pure(rng)
    mu = mu / mu.norm()
    cfg = dynamics.RunConfig(
        inertia=dynamics.InertiaSpec(1.0, 2.0, 3.0),
        initial=dynamics.State(random_unit(rng), mu),
        dt=1e-3, t_end=10.0, integrator=integrator,
        formulation=formulation, output_every=100)
    return dynamics.integrate(cfg)


def _check_energy_conservation(rng, n, tol):
    traj = _reference_run(rng, dynamics.Formulation.CANONICAL,
                          dynamics.Integrator.RK4_PROJECTED)
    return traj.summary()["max_energy_drift_rel"]


def _check_momentum_norm(rng, n, tol):
    traj = _reference_run(rng, dynamics.Formulation.CANONICAL,
                          dynamics.Integrator.RK4_PROJECTED)
    return traj.summary()["max_munorm_drift"]


def _check_unit_norm_projected(rng, n, tol):
    traj = _reference_run(rng, dynamics.Formulation.CANONICAL,
                          dynamics.Integrator.RK4_PROJECTED)
    return traj.summary()["max_qnorm_drift"]


def _check_unit_norm_raw(rng, n, tol):
    traj = _reference_run(rng, dynamics.Formulation.CANONICAL,
                          dynamics.Integrator.RK4_RAW)
    return traj.summary()["max_qnorm_drift"]


def _check_casimir_projected(rng, n, tol):
    traj = _reference_run(rng, dynamics.Formulation.LIE_POISSON,
                          dynamics.Integrator.RK4_PROJECTED)
    return traj.summary()["max_qnorm_drift"]


def _check_divergence(rng, n, tol):
    mu = random_pure(rng)
    mu = mu / mu.norm()
    cfg = dynamics.RunConfig(
        inertia=dynamics.InertiaSpec(1.0, 2.0, 3.0),
        initial=dynamics.State(random_unit(rng), mu),
        dt=1e-3, t_end=10.0, formulation=dynamics.Formulation.BOTH,
        output_every=100)
    return dynamics.compare_formulations(cfg).max_divergence


def _symmetric_run_error(dt: float) -> float:
    cfg = dynamics.RunConfig(
        inertia=dynamics.InertiaSpec(1.0, 1.0, 1.0),
        initial=dynamics.State(UnitQuaternion(1.0, 0.0, 0.0, 0.0),
                               PureQuaternion(0.0, 0.0, 1.0)),
        dt=dt, t_end=1.0, output_every=1)
    traj = dynamics.integrate(cfg)
    worst = 0.0
    for i, t in enumerate(traj.times):
        expected = np.array([math.cos(t), 0.0, 0.0, math.sin(t)])
        worst = max(worst, float(np.linalg.norm(traj.states[i, 0:4] - expected)))
    return worst


def _check_symmetric_closed_form(rng, n, tol):
    return _symmetric_run_error(1e-3)


def _check_convergence_order(rng, n, tol):
    errors = [_symmetric_run_error(dt) for dt in (0.1, 0.05, 0.025)]
    ratios = [errors[i] / errors[i + 1] for i in range(2)]
    return max(abs(r - 16.0) for r in ratios)


# ---------------------------------------------------------------------------
# conventions

def detect_kks_nu_sign() -> str:
    """Which sign of the mixed bracket term makes the 2-form exact.

    Compares the finite-difference d theta against both sign candidates of
    the pairing term (nu xi' -+ nu' xi) at a fixed generic point; returns
    "minus" or "plus" (or "ambiguous" if neither matches).
    """
    x = DualElement(Quaternion(0.7, -0.3, 0.4, 1.1), PureQuaternion(0.5, -1.0, 0.8))
    v = AlgebraElement(Quaternion(0.2, 0.9, -0.5, 0.3), PureQuaternion(0.6, -0.2, 0.4))
    vp = AlgebraElement(Quaternion(-0.4, 0.1, 0.8, -0.6), PureQuaternion(-0.3, 0.7, 0.2))
    dtheta = symplectic.d_theta_numeric(x, v, vp, FD_STEP)
    xi_term = x.mu.dot(2.0 * quaternion.cross(v.xi, vp.xi))
    mixed_minus = quaternion.inner(
        x.pi, quaternion.mul(v.nu, quaternion.embed(vp.xi))
        - quaternion.mul(vp.nu, quaternion.embed(v.xi)))
    mixed_plus = quaternion.inner(
        x.pi, quaternion.mul(v.nu, quaternion.embed(vp.xi))
        + quaternion.mul(vp.nu, quaternion.embed(v.xi)))
    omega_minus = -(mixed_minus + xi_term)
    omega_plus = -(mixed_plus + xi_term)
    if abs(dtheta + omega_minus) < 1e-6:
        return "minus"
    if abs(dtheta + omega_plus) < 1e-6:
        return "plus"
    return "ambiguous"


def conventions() -> dict:
    return {
        "kks_nu_term_sign": detect_kks_nu_sign(),
        "liouville_theta_sign": symplectic.liouville_sign(),
    }


# ---------------------------------------------------------------------------
# registry and runner

CHECKS = (
    Check("quaternion.associativity", 1000, 1e-14, _check_associativity),
    Check("quaternion.norm_multiplicative", 1000, 1e-12, _check_norm_multiplicative),
    Check("quaternion.inner_adjoint", 1000, 1e-12, _check_inner_adjoint),
    Check("quaternion.pure_product_split", 1000, 0.0, _check_pure_product_split),
    Check("quaternion.rotation_composition", 1000, 1e-12, _check_rotation_composition),
    Check("lie.structure_antisymmetry", 1, 0.0, _check_structure_antisymmetry, scales=False),
    Check("lie.jacobi_basis_integer", 1, 0.0, _check_jacobi_basis, scales=False),
    Check("lie.bracket_matches_table", 1, 0.0, _check_bracket_vs_table, scales=False),
    Check("lie.jacobi_random", 1000, 1e-12, _check_jacobi_random),
    Check("lie.ad_homomorphism", 1000, 1e-12, _check_ad_homomorphism),
    Check("lie.ad_derivative_fd", 1000, 1e-6, _check_ad_derivative),
    Check("lie.group_axioms", 1000, 1e-13, _check_group_axioms),
    Check("coadjoint.duality_pairing", 1000, 1e-12, _check_duality_pairing),
    Check("coadjoint.action_composition", 1000, 1e-12, _check_coad_composition),
    Check("coadjoint.generator_fd", 1000, 1e-6, _check_generator_fd),
    Check("coadjoint.casimir_invariance", 1000, 1e-12, _check_casimir_invariance),
    Check("coadjoint.casimir_flow_derivative", 1000, 1e-10, _check_casimir_flow_derivative),
    Check("coadjoint.type1_radius_invariance", 1000, 1e-12, _check_type1_radius),
    Check("coadjoint.mu_purity", 1000, 1e-12, _check_mu_purity),
    Check("coadjoint.normal_form_reduction", 1000, 1e-10, _check_normal_form),
    Check("coadjoint.orbit_point_roundtrip", 1000, 1e-10, _check_orbit_point_roundtrip),
    Check("symplectic.kks_antisym_bilinear", 1000, 1e-12, _check_kks_antisym_bilinear),
    Check("symplectic.nondegeneracy_inv_sigma", 100, 1e8, _check_nondegeneracy),
    Check("symplectic.closedness_fd", 200, 1e-5, _check_closedness),
    Check("symplectic.exactness", 1000, 1e-6, _check_exactness),
    Check("symplectic.theta_well_defined", 1000, 0.0, _check_theta_well_defined),
    Check("symplectic.kernel_generator_vanishes", 1000, 1e-14, _check_kernel_generator),
    Check("symplectic.cotangent_pairing", 1000, 1e-12, _check_cotangent_pairing),
    Check("symplectic.phi_injectivity_inv_dist", 200, 1e9, _check_phi_injectivity),
    Check("symplectic.liouville_pullback", 500, 1e-6, _check_liouville),
    Check("poisson.antisym_bilinear", 500, 1e-12, _check_poisson_antisym_bilinear),
    Check("poisson.leibniz", 500, 1e-10, _check_leibniz),
    Check("poisson.base_bracket_coincidence", 1000, 1e-12, _check_coincidence),
    Check("poisson.quaternionic_forms", 500, 1e-12, _check_quaternionic_forms),
    Check("poisson.jacobi_quadratic", 300, 1e-10, _check_jacobi_quadratic),
    Check("poisson.casimir_central", 500, 1e-12, _check_casimir_central),
    Check("dynamics.lp_field_closed_form", 200, 1e-12, _check_lp_field_closed_form),
    Check("dynamics.energy_conservation", 1, 1e-8, _check_energy_conservation, scales=False),
    Check("dynamics.momentum_norm", 1, 1e-8, _check_momentum_norm, scales=False),
    Check("dynamics.unit_norm_projected", 1, 1e-12, _check_unit_norm_projected, scales=False),
    Check("dynamics.unit_norm_raw_drift", 1, 1e-6, _check_unit_norm_raw, scales=False),
    Check("dynamics.casimir_projected", 1, 1e-12, _check_casimir_projected, scales=False),
    Check("dynamics.formulation_divergence", 1, 1e-8, _check_divergence, scales=False),
    Check("dynamics.symmetric_closed_form", 1, 1e-10, _check_symmetric_closed_form, scales=False),
    Check("dynamics.convergence_order", 1, 2.0, _check_convergence_order, scales=False),
)

CHECK_NAMES = tuple(c.name for c in CHECKS)


def run_verification(seed: int = 0, trials: int = 1000,
                     tolerance_overrides: Optional[dict] = None,
                     names=None) -> VerificationReport:
    """Run the (selected) property checks and assemble the report.

    Per-check RNG streams are spawned from the root seed in registry
    order, so a subset run reproduces exactly the full run's draws.
    """
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    overrides = dict(tolerance_overrides or {})
    unknown = set(overrides) - set(CHECK_NAMES)
    if unknown:
        raise ConfigError(f"unknown property names: {', '.join(sorted(unknown))}")
    selected = set(CHECK_NAMES if names is None else names)
    unknown = selected - set(CHECK_NAMES)
    if unknown:
        raise ConfigError(f"unknown property names: {', '.join(sorted(unknown))}")

    streams = np.random.SeedSequence(seed).spawn(len(CHECKS))
    results = []
    for check, stream in zip(CHECKS, streams):
        if check.name not in selected:
            continue
        rng = np.random.Generator(np.random.PCG64(stream))
        n = check.nominal_trials
        if check.scales:
            n = max(1, round(check.nominal_trials * trials / 1000))
        tol = overrides.get(check.name, check.tolerance)
        residual = float(check.fn(rng, n, tol))
        results.append(PropertyResult(check.name, n, residual, tol,
                                      residual <= tol))
    return VerificationReport(
        seed=seed, trials=trials, backend=backend_name(),
        conventions=conventions(), properties=results,
        all_pass=all(r.passed for r in results))
