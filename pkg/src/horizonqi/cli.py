"""Command-line front end.

Exit codes: 0 success, 2 usage or configuration error, 3 numeric or
contract error, 4 I/O error.  Errors go to stderr as one line.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .entanglement import concurrence, residual_tangle
from .errors import ConfigurationError, DomainError, HorizonQIError, LabelError
from .horizon import DEFAULT_DRESSED, BlackHoleModel, Scenario, build_reduced, mode_amplitudes
from .numkernel import Tolerances, override_tolerances
from .qstate import DensityOp, dumps_state, loads_state, make_family, to_density
from .teleport import fully_entangled_fraction, teleportation_fidelity

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
DEFAULT_SEED = 42
DEFAULT_TRACE = "B"


class UsageError(Exception):
    pass


# -- argument parsing ---------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), help="output format")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized estimators (default 42)")
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE", help="override a numeric tolerance")
    return p


def _model_args(p: argparse.ArgumentParser, omega_required: bool) -> None:
    p.add_argument("--family", required=True, choices=("ghz", "w", "w1"))
    p.add_argument("--model", required=True, choices=("schwarzschild", "dilaton"))
    p.add_argument("--mass", type=float)
    p.add_argument("--temp", type=float, help="Hawking temperature (Schwarzschild)")
    p.add_argument("--dilaton", type=float, help="dilaton parameter D")
    p.add_argument("--charge", type=float, help="charge Q, D = Q^2 / 2M")
    p.add_argument("--omega", type=float, required=omega_required, default=None if omega_required else 0.0)
    p.add_argument("--dress", default=",".join(DEFAULT_DRESSED), help="comma-separated parties near the horizon")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="horizonqi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", parents=[common], help="emit a flat-space three-qubit state")
    p.add_argument("--family", required=True, choices=("ghz", "w", "w1"))

    p = sub.add_parser("dress", parents=[common], help="dress a state and emit the reduced density operator")
    _model_args(p, omega_required=True)
    p.add_argument("--trace-qubit", choices=("A", "B", "C"))

    p = sub.add_parser("measure", parents=[common], help="entanglement and teleportation measures of a state file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--concurrence", action="store_true")
    p.add_argument("--tangle", action="store_true")
    p.add_argument("--fidelity", action="store_true")
    p.add_argument("--fef", action="store_true", help="also estimate the fully entangled fraction (uses --seed)")
    p.add_argument("--pivot", default="A", help="pivot qubit for the tangle")

    p = sub.add_parser("sweep", parents=[common], help="two-axis parameter sweep")
    _model_args(p, omega_required=False)
    p.add_argument("--axis1", required=True, help="name:start:stop:step")
    p.add_argument("--axis2", required=True, help="name:start:stop:step")
    p.add_argument("--measures", required=True, help="comma-separated: " + ",".join(analysis.MEASURES))
    p.add_argument("--trace-qubit", choices=("A", "B", "C"), default=DEFAULT_TRACE)

    p = sub.add_parser("reproduce", parents=[common], help="write the CSVs behind a figure")
    p.add_argument("--figure", required=True, type=int, choices=sorted(analysis.FIGURES))
    p.add_argument("--outdir", required=True)
    p.add_argument("--points", type=int, default=analysis.figures.DEFAULT_POINTS)
    p.add_argument("--trace-qubit", choices=("A", "B", "C"), default=DEFAULT_TRACE)

    p = sub.add_parser("crosscheck", parents=[common], help="diff printed matrices and formulas against the pipeline")
    _model_args(p, omega_required=True)
    p.add_argument("--claims", action="store_true", help="also check the published scalar values")
    return parser


# -- helpers --------------------------------------------------------------------

def _model(args) -> BlackHoleModel:
    if args.model == "schwarzschild":
        if args.dilaton is not None or args.charge is not None:
            raise UsageError("--dilaton/--charge do not apply to --model schwarzschild")
        if (args.mass is None) == (args.temp is None):
            raise UsageError("--model schwarzschild takes exactly one of --mass or --temp")
        return BlackHoleModel.schwarzschild(mass=args.mass, temperature=args.temp)
    if args.temp is not None:
        raise UsageError("--temp does not apply to --model dilaton")
    if (args.dilaton is None) == (args.charge is None):
        raise UsageError("--model dilaton takes exactly one of --dilaton or --charge")
    mass = 1.0 if args.mass is None else args.mass
    return BlackHoleModel.ghs_dilaton(mass=mass, dilaton=args.dilaton, charge=args.charge)


def _dressed(args) -> tuple[str, ...]:
    return tuple(x.strip() for x in args.dress.split(",") if x.strip())


def _tolerances(items) -> dict:
    fields = [f.name for f in dataclasses.fields(Tolerances)]
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or name not in fields:
            raise UsageError(f"--tol expects NAME=VALUE with NAME in {', '.join(fields)}, got {item!r}")
        try:
            out[name] = int(value) if name == "jacobi_max_sweeps" else float(value)
        except ValueError:
            raise UsageError(f"--tol {name}: {value!r} is not a number") from None
    return out


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write output: {exc.strerror}", str(path)) from exc


def _json_only(args, what: str) -> None:
    if args.format == "csv":
        raise UsageError(f"{what} output is JSON only")


def _as_json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _measures_csv(values: dict) -> str:
    lines = ["measure,value"]
    for k, v in values.items():
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, float):
            v = f"{v:.9g}"
        lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------------

def _cmd_state(args) -> None:
    _json_only(args, "state")
    _emit(dumps_state(make_family(args.family)) + "\n", args.out)


def _cmd_dress(args) -> None:
    _json_only(args, "dress")
    sc = Scenario(args.family, _model(args), args.omega, _dressed(args), args.trace_qubit)
    _emit(dumps_state(build_reduced(sc)) + "\n", args.out)


def _cmd_measure(args) -> None:
    try:
        text = Path(args.inp).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot read state: {exc.strerror}", args.inp) from exc
    try:
        state = loads_state(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{args.inp} is not valid JSON: {exc}") from None
    rho = state if isinstance(state, DensityOp) else to_density(state)
    wanted = {k for k in ("concurrence", "tangle", "fidelity") if getattr(args, k)}
    if not wanted:
        wanted = {"concurrence", "fidelity"} if rho.n_qubits == 2 else {"tangle"}

    values: dict = {"labels": ",".join(rho.labels)}
    if {"concurrence", "fidelity"} & wanted and rho.n_qubits != 2:
        raise UsageError(f"concurrence and fidelity need a two-qubit state, {args.inp} has {rho.n_qubits}")
    if "tangle" in wanted and rho.n_qubits != 3:
        raise UsageError(f"tangle needs a three-qubit state, {args.inp} has {rho.n_qubits}")
    if "concurrence" in wanted:
        values["concurrence"] = concurrence(rho)
    if "fidelity" in wanted:
        rec = teleportation_fidelity(rho)
        values.update(n_value=rec.n_value, fidelity=rec.fidelity, useful=rec.useful)
    if args.fef:
        values["fully_entangled_fraction"] = fully_entangled_fraction(rho, seed=args.seed)
    if "tangle" in wanted:
        br = residual_tangle(rho, args.pivot)
        values.update(one_tangle=br.one_tangle, c2_first=float(br.c2_ab), c2_second=float(br.c2_ac), residual_tangle=br.residual)
    if args.format == "csv":
        _emit(_measures_csv(values), args.out)
    else:
        values["labels"] = list(rho.labels)
        _emit(_as_json(values), args.out)


def _cmd_sweep(args) -> None:
    measures = [m.strip() for m in args.measures.split(",") if m.strip()]
    pair = set(measures) & set(analysis.sweep.PAIR_MEASURES)
    traced = args.trace_qubit if pair else None
    template = Scenario(args.family, _model(args), args.omega, _dressed(args), traced)
    grid = analysis.SweepGrid(analysis.Axis.parse(args.axis1), analysis.Axis.parse(args.axis2))
    result = analysis.run_sweep(template, grid, measures)
    if args.format == "json":
        rows = [dataclasses.asdict(r) for r in result]
        _emit(_as_json({"axis1": grid.axis1.name, "axis2": grid.axis2.name, "records": rows}), args.out)
    else:
        _emit(result.to_csv(), args.out)


def _cmd_reproduce(args) -> None:
    if args.format == "json":
        raise UsageError("figure output is CSV only")
    paths = analysis.reproduce_figure(args.figure, args.outdir, points=args.points, trace_qubit=args.trace_qubit)
    for p in paths:
        print(p)


def _cmd_crosscheck(args) -> None:
    _json_only(args, "crosscheck")
    model = _model(args)
    amps = mode_amplitudes(model, args.omega)
    mu, nu = amps.mu, amps.nu
    out = {
        "family": args.family,
        "model": model.to_dict(),
        "omega": args.omega,
        "mu": mu,
        "nu": nu,
        "unphysical": model.unphysical,
        "matrices": [analysis.compare_with_printed_matrix(t, mu, nu).to_dict() for t in analysis.targets_for(args.family)],
    }
    forms = []
    if args.family == "w":
        rho = build_reduced(Scenario("w", model, args.omega, traced_party=DEFAULT_TRACE))
        for name, printed, pipe in (
            ("fidelity", analysis.closed_form_fidelity_w(mu, nu), teleportation_fidelity(rho).fidelity),
            ("concurrence", analysis.closed_form_concurrence_w(mu, nu), concurrence(rho)),
        ):
            forms.append({"quantity": name, "printed_formula": printed, "pipeline": pipe, "difference": pipe - printed})
    elif args.family == "ghz":
        rho3 = build_reduced(Scenario("ghz", model, args.omega))
        pipe = residual_tangle(rho3).residual
        printed = analysis.closed_form_tangle_ghz(mu, nu)
        forms.append({"quantity": "residual_tangle", "printed_formula": printed, "pipeline": pipe, "difference": pipe - printed})
    out["closed_forms"] = forms
    if args.claims:
        out["claims"] = [c.to_dict() for c in analysis.check_claims()]
    _emit(_as_json(out), args.out)


COMMANDS = {
    "state": _cmd_state,
    "dress": _cmd_dress,
    "measure": _cmd_measure,
    "sweep": _cmd_sweep,
    "reproduce": _cmd_reproduce,
    "crosscheck": _cmd_crosscheck,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with override_tolerances(**_tolerances(args.tol)):
            COMMANDS[args.command](args)
    except (UsageError, ConfigurationError, DomainError, LabelError) as exc:
        print(f"horizonqi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HorizonQIError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"horizonqi: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"horizonqi: error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
