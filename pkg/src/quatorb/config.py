"""Flat key-value run configuration files.

Schema (one ``key = value`` pair per line, ``#`` starts a comment,
unknown keys are errors):

    i1, i2, i3      positive reals, principal moments of inertia
    q               four reals w x y z, initial orientation (unit)
    mu              three reals, initial body angular momentum
    dt              positive real, step size
    t_end           real >= dt, final time
    integrator      rk4_projected (default) | rk4_raw
    formulation     canonical (default) | lie_poisson | both
    output_every    positive integer sampling cadence in steps (default 1)
    renormalize_q   true | false (default false); explicit opt-in projection
                    of a non-unit initial q
"""

from __future__ import annotations

from .dynamics import Formulation, InertiaSpec, Integrator, RunConfig, State
from .errors import ConfigError, DomainError
from .quaternion import PureQuaternion, Quaternion, UnitQuaternion, renormalize

_REQUIRED = ("i1", "i2", "i3", "q", "mu", "dt", "t_end")
_OPTIONAL = ("integrator", "formulation", "output_every", "renormalize_q")

EXAMPLE_CONFIG = """\
# free asymmetric rigid body
i1 = 1.0
i2 = 2.0
i3 = 3.0
q = 1 0 0 0
mu = 0.3 0.4 0.5
dt = 0.001
t_end = 10.0
integrator = rk4_projected
formulation = canonical
output_every = 100
"""


def _floats(value: str, count: int, key: str) -> list:
    parts = value.split()
    if len(parts) != count:
        raise ConfigError(f"key {key!r} needs {count} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: {exc}") from exc


def parse_config_text(text: str) -> RunConfig:
    """Parse configuration text into a validated RunConfig."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _REQUIRED and key not in _OPTIONAL:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        entries[key] = value

    missing = [k for k in _REQUIRED if k not in entries]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    try:
        inertia = InertiaSpec(*(_floats(entries[k], 1, k)[0] for k in ("i1", "i2", "i3")))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc

    qc = _floats(entries["q"], 4, "q")
    mc = _floats(entries["mu"], 3, "mu")
    renorm = _parse_bool(entries.get("renormalize_q", "false"), "renormalize_q")
    try:
        if renorm:
            q = renormalize(Quaternion(*qc))
        else:
            q = UnitQuaternion(*qc)
        initial = State(q, PureQuaternion(*mc))
    except DomainError as exc:
        raise ConfigError(f"initial state: {exc}") from exc

    integrator = _parse_enum(Integrator, entries.get("integrator", "rk4_projected"),
                             "integrator")
    formulation = _parse_enum(Formulation, entries.get("formulation", "canonical"),
                              "formulation")
    dt = _floats(entries["dt"], 1, "dt")[0]
    t_end = _floats(entries["t_end"], 1, "t_end")[0]
    output_every = _parse_int(entries.get("output_every", "1"), "output_every")

    return RunConfig(inertia=inertia, initial=initial, dt=dt, t_end=t_end,
                     integrator=integrator, formulation=formulation,
                     output_every=output_every)


def parse_config_file(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config_text(text)


def _parse_bool(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v == "true":
        return True
    if v == "false":
        return False
    raise ConfigError(f"key {key!r} must be true or false, got {value!r}")


def _parse_int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigError(f"key {key!r} must be an integer, got {value!r}") from exc


def _parse_enum(enum_cls, value: str, key: str):
    try:
        return enum_cls(value.strip().lower())
    except ValueError as exc:
        options = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"key {key!r} must be one of: {options}") from exc
