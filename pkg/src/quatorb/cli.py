"""Command-line front end.

Commands: verify (property suite), orbit (classification and reduction),
brackets (base-bracket table), simulate (trajectory run), compare (both
formulations).  Exit codes: 0 success, 1 verification or runtime failure,
2 usage or configuration error.

The default seed comes from QUATORB_SEED when set; --seed overrides.
Identical invocations with identical seeds produce byte-identical output
(reports carry no timestamps and the generator, PCG64 spawned through
numpy SeedSequence, is part of the interface).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import parse_config_file
from .coadjoint import DualElement, orbit_report
from .dynamics import Formulation, RunConfig, compare_formulations, integrate
from .errors import ConfigError, DomainError, QuatorbError
from .poisson import base_bracket_table, write_bracket_csv
from .quaternion import PureQuaternion, Quaternion
from .verification import run_verification

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _default_seed() -> int:
    raw = os.environ.get("QUATORB_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"QUATORB_SEED must be an integer, got {raw!r}") from exc


def _parse_tolerance_overrides(pairs) -> dict:
    overrides = {}
    for pair in pairs or ():
        name, sep, value = pair.partition("=")
        if not sep:
            raise ConfigError(f"--tolerance expects NAME=VALUE, got {pair!r}")
        try:
            overrides[name.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad tolerance value in {pair!r}") from exc
    return overrides


def _dual_from_args(args) -> DualElement:
    try:
        return DualElement(Quaternion(*args.pi), PureQuaternion(*args.mu))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_verify(args) -> int:
    report = run_verification(seed=args.seed, trials=args.trials,
                              tolerance_overrides=_parse_tolerance_overrides(args.tolerance))
    for line in report.text_lines():
        print(line)
    if args.json:
        Path(args.json).write_text(report.to_json(), encoding="utf-8")
    return EXIT_OK if report.all_pass else EXIT_FAILURE


def cmd_orbit(args) -> int:
    report = orbit_report(_dual_from_args(args))
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_brackets(args) -> int:
    reports = base_bracket_table(_dual_from_args(args))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_bracket_csv(reports, fh)
    else:
        write_bracket_csv(reports, sys.stdout)
    return EXIT_OK


def _write_trajectory(traj, path: Path):
    with open(path, "w", encoding="utf-8") as fh:
        traj.write_csv(fh)


def cmd_simulate(args) -> int:
    cfg = parse_config_file(args.config)
    out = Path(args.out)
    if cfg.formulation is Formulation.BOTH:
        result = compare_formulations(cfg)
        can_path = out.with_name(out.stem + "_canonical" + out.suffix)
        lp_path = out.with_name(out.stem + "_lie_poisson" + out.suffix)
        _write_trajectory(result.canonical, can_path)
        _write_trajectory(result.lie_poisson, lp_path)
        summary = result.report()
        summary["trajectory_csv"] = [str(can_path), str(lp_path)]
    else:
        traj = integrate(cfg)
        _write_trajectory(traj, out)
        summary = traj.summary()
        summary["trajectory_csv"] = [str(out)]
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.summary:
        Path(args.summary).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = parse_config_file(args.config)
    if cfg.formulation is not Formulation.BOTH:
        base = {"inertia": cfg.inertia, "initial": cfg.initial, "dt": cfg.dt,
                "t_end": cfg.t_end, "integrator": cfg.integrator,
                "output_every": cfg.output_every}
        cfg = RunConfig(formulation=Formulation.BOTH, **base)
    result = compare_formulations(cfg)
    sys.stdout.write(json.dumps(result.report(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatorb",
        description="Coadjoint-orbit and Lie-Poisson toolkit for the "
                    "quaternionic semidirect-product group, with a "
                    "rigid-body integrator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the property-check suite")
    p.add_argument("--trials", type=int, default=1000,
                   help="scale for the randomized sweeps (default 1000)")
    p.add_argument("--seed", type=int, default=None,
                   help="root seed (default: QUATORB_SEED or 0)")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report")
    p.add_argument("--tolerance", action="append", metavar="NAME=VALUE",
                   help="override a property tolerance (repeatable)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("orbit", help="classify a dual point and reduce it")
    p.add_argument("--pi", type=float, nargs=4, required=True,
                   metavar=("W", "X", "Y", "Z"))
    p.add_argument("--mu", type=float, nargs=3, required=True,
                   metavar=("X", "Y", "Z"))
    p.add_argument("--json", metavar="PATH", help="also write the report to a file")
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("brackets", help="dump the base-bracket table as CSV")
    p.add_argument("--pi", type=float, nargs=4, required=True,
                   metavar=("W", "X", "Y", "Z"))
    p.add_argument("--mu", type=float, nargs=3, required=True,
                   metavar=("X", "Y", "Z"))
    p.add_argument("--out", metavar="PATH", help="CSV path (default: stdout)")
    p.set_defaults(fn=cmd_brackets)

    p = sub.add_parser("simulate", help="run a configured rigid-body flow")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--out", default="trajectory.csv", metavar="PATH",
                   help="trajectory CSV path (default trajectory.csv); a "
                        "'both' run writes *_canonical and *_lie_poisson files")
    p.add_argument("--summary", metavar="PATH", help="also write the summary JSON")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("compare", help="run both formulations and report divergence")
    p.add_argument("--config", required=True, metavar="PATH")
    p.set_defaults(fn=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and args.command == "verify":
        try:
            args.seed = _default_seed()
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuatorbError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
