"""Command line front end: ``rabi-jc {point,sweep,bs-shift,preset}``.

Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InvalidParams, InvalidSpec, NegativeDegree, OutputError, RabiError
from .params import ModelParams
from .sweep import (
    LAMBDA_METHODS,
    METHODS,
    OBSERVABLES,
    PRESETS,
    SWEPT,
    UNITS,
    SweepSpec,
    emit,
    run_sweep,
    tabulate,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_IO = 4

FIG3_PARAMS = ModelParams(8.13, 4.25, 0.813)


def _observables(text: str) -> tuple:
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default="-", help="output path (default: stdout)")
    parser.add_argument("--workers", type=int, default=None, help="thread pool size")
    parser.add_argument("--timing", action="store_true", help="record wall time in the metadata")


def _add_solver(parser: argparse.ArgumentParser, *, unit: str = "omega") -> None:
    parser.add_argument("--levels", type=int, default=8)
    parser.add_argument("--n-max", type=int, default=60, dest="n_max")
    parser.add_argument("--lambda-method", choices=LAMBDA_METHODS, default="closed", dest="lambda_method")
    parser.add_argument("--unit", choices=UNITS, default=unit)


def _add_params(parser: argparse.ArgumentParser, defaults: ModelParams) -> None:
    parser.add_argument("--omega", type=float, default=defaults.omega, help="oscillator frequency")
    parser.add_argument("--Omega", type=float, default=defaults.Omega_r, dest="Omega_r",
                        help="two-level splitting")
    parser.add_argument("--g", type=float, default=defaults.g, help="coupling strength")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabi-jc",
        description="Rabi model spectra: analytic Jaynes-Cummings-like mapping vs exact diagonalization.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="solve one parameter point", allow_abbrev=False)
    _add_params(point, ModelParams(1.0, 1.0, 0.1))
    _add_solver(point)
    point.add_argument("--observables", type=_observables, default=OBSERVABLES,
                       help=f"comma-separated subset of {','.join(OBSERVABLES)}")
    point.add_argument("--methods", choices=METHODS, default="both")
    _add_output(point)

    sweep = sub.add_parser("sweep", help="sweep g or Omega over a grid", allow_abbrev=False)
    _add_params(sweep, ModelParams(1.0, 1.0, 0.1))
    _add_solver(sweep)
    sweep.add_argument("--swept", choices=SWEPT, default="g")
    sweep.add_argument("--from", type=float, default=0.0, dest="start")
    sweep.add_argument("--to", type=float, default=0.5, dest="stop")
    sweep.add_argument("--steps", type=int, default=51)
    sweep.add_argument("--observables", type=_observables, default=("energy",),
                       help=f"comma-separated subset of {','.join(OBSERVABLES)}")
    sweep.add_argument("--methods", choices=METHODS, default="both")
    _add_output(sweep)

    bs = sub.add_parser("bs-shift", help="Bloch-Siegert shift of the lowest transition",
                        allow_abbrev=False)
    _add_params(bs, FIG3_PARAMS)
    _add_solver(bs, unit="ghz")
    bs.add_argument("--methods", choices=METHODS, default="both")
    _add_output(bs)

    preset = sub.add_parser("preset", help="run a named sweep preset", allow_abbrev=False)
    preset.add_argument("name", choices=sorted(PRESETS))
    preset.add_argument("--n-max", type=int, default=None, dest="n_max")
    preset.add_argument("--lambda-method", choices=LAMBDA_METHODS, default=None, dest="lambda_method")
    _add_output(preset)
    return parser


def _params(args) -> ModelParams:
    return ModelParams(args.omega, args.Omega_r, args.g)


def _run(args):
    if args.command == "point":
        return tabulate(
            [_params(args)], levels=args.levels, observables=args.observables, methods=args.methods,
            lambda_method=args.lambda_method, n_max=args.n_max, unit=args.unit,
            metadata={"preset": "point"}, workers=args.workers, timing=args.timing,
        )
    if args.command == "bs-shift":
        return tabulate(
            [_params(args)], levels=2, observables=("bs_shift", "lambda"), methods=args.methods,
            lambda_method=args.lambda_method, n_max=args.n_max, unit=args.unit,
            metadata={"preset": "bs-shift"}, workers=args.workers, timing=args.timing,
        )
    if args.command == "sweep":
        spec = SweepSpec(
            swept=args.swept, start=args.start, stop=args.stop, steps=args.steps,
            fixed=_params(args), levels=args.levels, observables=args.observables,
            methods=args.methods, lambda_method=args.lambda_method, n_max=args.n_max,
            unit=args.unit,
        )
        return run_sweep(spec, workers=args.workers, timing=args.timing)
    spec = PRESETS[args.name]
    overrides = {k: v for k, v in (("n_max", args.n_max), ("lambda_method", args.lambda_method)) if v is not None}
    if overrides:
        spec = SweepSpec(**{**spec.__dict__, **overrides})
    return run_sweep(spec, workers=args.workers, timing=args.timing)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table = _run(args)
        emit(table, args.format, args.out)
    except (InvalidSpec, InvalidParams, NegativeDegree) as exc:
        print(f"rabi-jc: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OutputError as exc:
        print(f"rabi-jc: {exc}", file=sys.stderr)
        return EXIT_IO
    except RabiError as exc:
        print(f"rabi-jc: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
