"""Free rigid-body flows in both bracket formulations.

The Hamiltonian is the standard kinetic energy in body momenta,
H = (mu1^2/I1 + mu2^2/I2 + mu3^2/I3)/2.  The base brackets generate

    dq = q xi_H        dmu = 2 mu x xi_H        xi_H = grad_mu H

on the canonical side, and the identical component equations on the
Lie-Poisson side with pi in place of q (no unit restriction on pi).  The
factor-of-2 convention follows the package's bracket table verbatim; the
familiar kinematics q' = q Omega / 2 corresponds to Omega = 2 xi_H and is
not rescaled away here.

Integration is classical fixed-step RK4 on the 7-component state; the
projected variant rescales the quaternion (or pi) block to its initial
norm after every step.  The hot loop lives in a compiled kernel with a
bit-identical pure-Python fallback (see quatorb._backend).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _backend
from .coadjoint import DualElement
from .errors import ConfigError, DomainError, IntegrationAbortError
from .lie import AlgebraElement
from .poisson import ScalarField, coordinate_fields, lie_poisson_bracket
from .quaternion import (
    PureQuaternion,
    Quaternion,
    UnitQuaternion,
    cross,
    embed,
    mul,
)


class Integrator(Enum):
    RK4_PROJECTED = "rk4_projected"
    RK4_RAW = "rk4_raw"


class Formulation(Enum):
    CANONICAL = "canonical"
    LIE_POISSON = "lie_poisson"
    BOTH = "both"


@dataclass(frozen=True)
class InertiaSpec:
    """Principal moments of inertia.

    Only positivity is enforced; the physical triangle-type admissibility
    (each moment at most the sum of the others) is deliberately not.
    """

    i1: float
    i2: float
    i3: float

    def __post_init__(self):
        for name in ("i1", "i2", "i3"):
            v = float(getattr(self, name))
            if not (v > 0.0 and math.isfinite(v)):
                raise DomainError(f"inertia {name} must be positive, got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class State:
    """Orientation (unit quaternion) plus body angular momentum."""

    q: UnitQuaternion
    mu: PureQuaternion


@dataclass(frozen=True)
class RunConfig:
    inertia: InertiaSpec
    initial: State
    dt: float
    t_end: float
    integrator: Integrator = Integrator.RK4_PROJECTED
    formulation: Formulation = Formulation.CANONICAL
    output_every: int = 1

    def __post_init__(self):
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ConfigError(f"dt must be positive, got {self.dt!r}")
        if not (self.t_end >= self.dt and math.isfinite(self.t_end)):
            raise ConfigError("t_end must be at least dt")
        if int(self.output_every) != self.output_every or self.output_every < 1:
            raise ConfigError("output_every must be a positive integer")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))


def kinetic_energy(mu: PureQuaternion, inertia: InertiaSpec) -> float:
    return 0.5 * (mu.x * mu.x / inertia.i1 + mu.y * mu.y / inertia.i2
                  + mu.z * mu.z / inertia.i3)


def hamiltonian(s: State, inertia: InertiaSpec) -> float:
    """Free-body kinetic energy of the state."""
    return kinetic_energy(s.mu, inertia)


def body_angular_rate(mu: PureQuaternion, inertia: InertiaSpec) -> PureQuaternion:
    """xi_H = grad_mu H = (mu1/I1, mu2/I2, mu3/I3)."""
    return PureQuaternion(mu.x / inertia.i1, mu.y / inertia.i2, mu.z / inertia.i3)


def hamiltonian_field(inertia: InertiaSpec) -> ScalarField:
    """The Hamiltonian as a scalar field on the dual space (analytic)."""
    m = np.diag([1.0 / inertia.i1, 1.0 / inertia.i2, 1.0 / inertia.i3,
                 0.0, 0.0, 0.0, 0.0])

    def evaluate(x: DualElement) -> float:
        return kinetic_energy(x.mu, inertia)

    def gradient(x: DualElement) -> AlgebraElement:
        return AlgebraElement(Quaternion(0.0, 0.0, 0.0, 0.0),
                              body_angular_rate(x.mu, inertia))

    return ScalarField(evaluate, gradient=gradient, hessian=lambda x: m,
                       name="H", check=False)


def canonical_vector_field(s: State, inertia: InertiaSpec):
    """Closed-form canonical flow: (dq, dmu) = (q xi_H, 2 mu x xi_H)."""
    xi = body_angular_rate(s.mu, inertia)
    return mul(s.q, embed(xi)), 2.0 * cross(s.mu, xi)


def lie_poisson_vector_field(x: DualElement, inertia: InertiaSpec):
    """Lie-Poisson flow of H, assembled by bracketing coordinates with H.

    Agrees with the closed form (pi xi_H, 2 mu x xi_H) to roundoff; the
    integrator uses that closed form.
    """
    h_field = hamiltonian_field(inertia)
    fields = coordinate_fields()
    comps = [lie_poisson_bracket(f, h_field, x) for f in fields]
    dpi = Quaternion(comps[3], comps[4], comps[5], comps[6])
    dmu = PureQuaternion(comps[0], comps[1], comps[2])
    return dpi, dmu


def _state_to_array(s: State) -> tuple:
    return (s.q.w, s.q.x, s.q.y, s.q.z, s.mu.x, s.mu.y, s.mu.z)


def _inv_inertia(inertia: InertiaSpec) -> tuple:
    return (1.0 / inertia.i1, 1.0 / inertia.i2, 1.0 / inertia.i3)


def step(s: State, inertia: InertiaSpec, dt: float,
         method: Integrator = Integrator.RK4_PROJECTED) -> State:
    """One RK4 step on a canonical state.

    The projected method rescales q back to its incoming norm.  A raw step
    leaves the tiny O(dt^5) norm drift in place; State construction still
    validates, so chains of raw steps that drift past the unit tolerance
    must go through :func:`integrate` (which works on raw arrays).
    """
    if dt <= 0.0:
        raise ConfigError("dt must be positive")
    project = method is Integrator.RK4_PROJECTED
    out = _backend.rk4_step(_state_to_array(s), _inv_inertia(inertia),
                            dt, project, s.q.norm())
    return State(UnitQuaternion(out[0], out[1], out[2], out[3]),
                 PureQuaternion(out[4], out[5], out[6]))


@dataclass(frozen=True)
class Trajectory:
    """Sampled integration output plus per-sample diagnostics."""

    formulation: Formulation
    integrator: Integrator
    dt: float
    times: np.ndarray
    states: np.ndarray      # (n, 7): y0..y3, mu1..mu3
    energy: np.ndarray
    qnorm: np.ndarray
    munorm: np.ndarray
    casimir: np.ndarray

    def summary(self) -> dict:
        e0 = self.energy[0]
        denom = abs(e0) if abs(e0) > 0.0 else 1.0
        return {
            "formulation": self.formulation.value,
            "integrator": self.integrator.value,
            "dt": self.dt,
            "t_end": float(self.times[-1]),
            "samples": int(len(self.times)),
            "max_energy_drift_rel": float(np.max(np.abs(self.energy - e0)) / denom),
            "max_munorm_drift": float(np.max(np.abs(self.munorm - self.munorm[0]))),
            "max_qnorm_drift": float(np.max(np.abs(self.qnorm - self.qnorm[0]))),
            "max_casimir_drift": float(np.max(np.abs(self.casimir - self.casimir[0]))),
        }

    def write_csv(self, stream):
        """Trajectory CSV, one row per sample, 17 significant digits."""
        stream.write("t,q0,q1,q2,q3,mu1,mu2,mu3,energy,qnorm,munorm,casimir\n")
        for i in range(len(self.times)):
            row = [self.times[i], *self.states[i], self.energy[i],
                   self.qnorm[i], self.munorm[i], self.casimir[i]]
            stream.write(",".join(f"{v:.17g}" for v in row) + "\n")


def integrate(cfg: RunConfig) -> Trajectory:
    """Run a single-formulation flow per the configuration.

    The Lie-Poisson run identifies pi(0) with the configured q(0).  Raises
    IntegrationAbortError when a step produces a non-finite state.
    """
    if cfg.formulation is Formulation.BOTH:
        raise ConfigError("integrate() runs one formulation; "
                          "use compare_formulations for 'both'")
    y0 = _state_to_array(cfg.initial)
    project = cfg.integrator is Integrator.RK4_PROJECTED
    target = cfg.initial.q.norm()
    indices, states, status = _backend.integrate_loop(
        y0, _inv_inertia(cfg.inertia), cfg.dt, cfg.n_steps,
        int(cfg.output_every), project, target)
    if status >= 0:
        raise IntegrationAbortError(step=int(status), t=float(status) * cfg.dt)
    times = indices.astype(np.float64) * cfg.dt
    inv = np.array(_inv_inertia(cfg.inertia))
    mu = states[:, 4:7]
    energy = 0.5 * (mu * mu) @ inv
    qnorm2 = np.sum(states[:, 0:4] * states[:, 0:4], axis=1)
    qnorm = np.sqrt(qnorm2)
    munorm = np.sqrt(np.sum(mu * mu, axis=1))
    return Trajectory(cfg.formulation, cfg.integrator, cfg.dt, times, states,
                      energy, qnorm, munorm, qnorm2)


@dataclass(frozen=True)
class ComparisonResult:
    """Canonical and Lie-Poisson runs plus their pointwise divergence."""

    canonical: Trajectory
    lie_poisson: Trajectory
    max_divergence: float

    def report(self) -> dict:
        return {
            "max_divergence": self.max_divergence,
            "dt": self.canonical.dt,
            "t_end": float(self.canonical.times[-1]),
            "samples": int(len(self.canonical.times)),
            "canonical": self.canonical.summary(),
            "lie_poisson": self.lie_poisson.summary(),
        }


def compare_formulations(cfg: RunConfig) -> ComparisonResult:
    """Run both formulations from identified initial data and compare.

    Divergence is the max over samples of |pi - q| + |mu_LP - mu_can|.
    Requires formulation = both.
    """
    if cfg.formulation is not Formulation.BOTH:
        raise ConfigError("compare_formulations requires formulation = both")
    base = {"inertia": cfg.inertia, "initial": cfg.initial, "dt": cfg.dt,
            "t_end": cfg.t_end, "integrator": cfg.integrator,
            "output_every": cfg.output_every}
    can = integrate(RunConfig(formulation=Formulation.CANONICAL, **base))
    lp = integrate(RunConfig(formulation=Formulation.LIE_POISSON, **base))
    dq = np.sqrt(np.sum((lp.states[:, 0:4] - can.states[:, 0:4]) ** 2, axis=1))
    dm = np.sqrt(np.sum((lp.states[:, 4:7] - can.states[:, 4:7]) ** 2, axis=1))
    return ComparisonResult(can, lp, float(np.max(dq + dm)))
