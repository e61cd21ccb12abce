"""Numerical toolkit for the quaternionic semidirect-product group S^3 x| H.

Exposes quaternion arithmetic, the 7-dimensional Lie algebra and group,
the coadjoint action with its orbit machinery, the orbit symplectic form
and its cotangent-bundle realization, Lie-Poisson bracket evaluators, and
a rigid-body integrator run in either bracket formulation.
"""

from ._backend import backend_name
from .coadjoint import (
    DualElement,
    OrbitDescriptor,
    OrbitKind,
    casimir,
    classify,
    coad,
    infinitesimal_generator,
    normal_form,
    orbit_point,
)
from .dynamics import (
    Formulation,
    InertiaSpec,
    Integrator,
    RunConfig,
    State,
    compare_formulations,
    hamiltonian,
    integrate,
)
from .lie import (
    Ad,
    AlgebraElement,
    GroupElement,
    ad,
    algebra_inner,
    bracket,
    exp_group,
    group_inv,
    group_mul,
    inner_auto,
    structure_constants,
)
from .poisson import ScalarField, base_bracket_table, lie_poisson_bracket
from .quaternion import PureQuaternion, Quaternion, UnitQuaternion
from .symplectic import CotangentPoint, d_theta_numeric, kks_form, phi, theta

__version__ = "0.1.0"

__all__ = [
    "Ad",
    "AlgebraElement",
    "CotangentPoint",
    "DualElement",
    "Formulation",
    "GroupElement",
    "InertiaSpec",
    "Integrator",
    "OrbitDescriptor",
    "OrbitKind",
    "PureQuaternion",
    "Quaternion",
    "RunConfig",
    "ScalarField",
    "State",
    "UnitQuaternion",
    "ad",
    "algebra_inner",
    "backend_name",
    "base_bracket_table",
    "bracket",
    "casimir",
    "classify",
    "coad",
    "compare_formulations",
    "d_theta_numeric",
    "exp_group",
    "group_inv",
    "group_mul",
    "hamiltonian",
    "infinitesimal_generator",
    "inner_auto",
    "integrate",
    "kks_form",
    "lie_poisson_bracket",
    "normal_form",
    "orbit_point",
    "phi",
    "structure_constants",
    "theta",
    "__version__",
]
