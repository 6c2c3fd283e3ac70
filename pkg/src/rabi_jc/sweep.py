"""Parameter sweeps over the analytic and exact solvers, as CSV/JSON tables."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from . import __version__
from .analytic import (
    analytic_spectrum,
    bloch_siegert_shift,
    mean_photon_excited,
    mean_photon_ground,
)
from .errors import InvalidParams, InvalidSpec, OutputError, RabiError
from .exact import DEFAULT_N_MAX, exact_spectrum, mean_photon
from .lambda_solver import solve_lambda
from .params import ModelParams, jc_energies, validate_params

OBSERVABLES = ("lambda", "energy", "mean_photon", "theta", "bs_shift")
METHODS = ("analytic", "exact", "both")
SWEPT = ("g", "Omega_r")
UNITS = ("omega", "ghz")
LAMBDA_METHODS = ("closed", "root")

@dataclass(frozen=True)
class SweepSpec:
    swept: str
    start: float
    stop: float
    steps: int
    fixed: ModelParams = ModelParams()
    levels: int = 8
    observables: tuple = ("energy",)
    methods: str = "both"
    lambda_method: str = "closed"
    n_max: int = DEFAULT_N_MAX
    unit: str = "omega"
    name: str = "custom"
    note: str = ""

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def points(self) -> list:
        return [replace(self.fixed, **{self.swept: float(v)}) for v in self.grid()]


@dataclass
class SweepTable:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)


def _check_settings(levels, observables, methods, lambda_method, n_max, unit) -> None:
    if levels < 1:
        raise InvalidSpec(f"levels must be >= 1, got {levels}")
    if not observables:
        raise InvalidSpec("at least one observable is required")
    unknown = set(observables) - set(OBSERVABLES)
    if unknown:
        raise InvalidSpec(f"unknown observables: {sorted(unknown)}")
    if methods not in METHODS:
        raise InvalidSpec(f"methods must be one of {METHODS}, got {methods!r}")
    if lambda_method not in LAMBDA_METHODS:
        raise InvalidSpec(f"lambda method must be one of {LAMBDA_METHODS}, got {lambda_method!r}")
    if n_max < 1:
        raise InvalidSpec(f"n_max must be >= 1, got {n_max}")
    if unit not in UNITS:
        raise InvalidSpec(f"unit must be one of {UNITS}, got {unit!r}")
    if not point_columns(levels, observables, methods)[3:]:
        raise InvalidSpec(f"observables {sorted(observables)} produce no columns for methods={methods}")


def _check_point(p: ModelParams, unit: str) -> None:
    try:
        validate_params(p)
    except InvalidParams as exc:
        raise InvalidSpec(f"invalid grid point {p}: {exc}") from exc
    if unit == "omega" and p.omega != 1.0:
        raise InvalidSpec(f"unit 'omega' requires omega == 1, got {p.omega}")


def validate_spec(spec: SweepSpec) -> SweepSpec:
    if spec.swept not in SWEPT:
        raise InvalidSpec(f"swept must be one of {SWEPT}, got {spec.swept!r}")
    if spec.steps < 2:
        raise InvalidSpec(f"steps must be >= 2, got {spec.steps}")
    if not spec.start < spec.stop:
        raise InvalidSpec(f"need from < to, got {spec.start} >= {spec.stop}")
    _check_settings(spec.levels, spec.observables, spec.methods, spec.lambda_method, spec.n_max, spec.unit)
    for p in spec.points():
        _check_point(p, spec.unit)
    return spec


def point_columns(levels: int, observables: Iterable[str], methods: str) -> list:
    """Column names of one row, in a fixed order independent of request order."""
    wanted = set(observables)
    analytic = methods in ("analytic", "both")
    exact = methods in ("exact", "both")
    both = methods == "both"
    cols = ["omega", "Omega_r", "g"]
    ks = range(levels)
    if "lambda" in wanted and analytic:
        cols.append("lambda")
    if "energy" in wanted:
        if analytic:
            cols += [f"E_analytic_{k}" for k in ks]
        if exact:
            cols += [f"E_exact_{k}" for k in ks]
        if both:
            cols += [f"E_abs_err_{k}" for k in ks]
    if "mean_photon" in wanted:
        if analytic:
            cols += [f"N_analytic_{k}" for k in ks]
            cols += [f"N_analytic_printed_{k}" for k in ks]
        if exact:
            cols += [f"N_exact_{k}" for k in ks]
        if both:
            cols += [f"N_abs_err_{k}" for k in ks]
            cols += [f"N_printed_abs_err_{k}" for k in ks]
    if "theta" in wanted and analytic:
        cols += [f"theta_{n}" for n in ks]
    if "bs_shift" in wanted:
        if analytic:
            cols.append("bs_analytic")
        if exact:
            cols.append("bs_exact")
        if both:
            cols.append("bs_abs_err")
    return cols


def run_point(
    p: ModelParams,
    levels: int,
    observables: Iterable[str],
    methods: str,
    *,
    lambda_method: str = "closed",
    n_max: int = DEFAULT_N_MAX,
) -> dict:
    """Every requested quantity at one parameter point, keyed by column name.

    Energies and mean photon numbers are matched by ascending energy rank.
    """
    wanted = set(observables)
    analytic = methods in ("analytic", "both")
    exact = methods in ("exact", "both")
    row = {"omega": p.omega, "Omega_r": p.Omega_r, "g": p.g}

    if analytic:
        lam = solve_lambda(p, lambda_method)
        spec = analytic_spectrum(p, levels + 1, lam)
        row["lambda"] = lam.value
        ranked = spec.ranked_states(levels)
        for k in range(levels):
            row[f"E_analytic_{k}"] = float(spec.sorted_energies[k])
            m = ranked[k]
            if m == 0:
                n_derived = n_printed = mean_photon_ground(lam)
            else:
                n_derived = mean_photon_excited(p, lam, m, "derived")
                n_printed = mean_photon_excited(p, lam, m, "printed")
            row[f"N_analytic_{k}"] = n_derived
            row[f"N_analytic_printed_{k}"] = n_printed
            row[f"theta_{k}"] = spec.levels[k].theta
        row["bs_analytic"] = bloch_siegert_shift(p, lam)

    if exact and wanted & {"energy", "mean_photon", "bs_shift"}:
        ex = exact_spectrum(p, max(levels, 2), n_max=n_max, want_vectors="mean_photon" in wanted)
        for k in range(levels):
            row[f"E_exact_{k}"] = float(ex.eigenvalues[k])
            if ex.eigenvectors is not None:
                row[f"N_exact_{k}"] = mean_photon(ex.eigenvectors[:, k])
        jc = jc_energies(p, 1)
        row["bs_exact"] = float(ex.eigenvalues[1] - ex.eigenvalues[0]) - (jc.doublet(0)[0] - jc.ground_energy)

    if analytic and exact:
        for k in range(levels):
            if "energy" in wanted:
                row[f"E_abs_err_{k}"] = abs(row[f"E_analytic_{k}"] - row[f"E_exact_{k}"])
            if "mean_photon" in wanted:
                row[f"N_abs_err_{k}"] = abs(row[f"N_analytic_{k}"] - row[f"N_exact_{k}"])
                row[f"N_printed_abs_err_{k}"] = abs(row[f"N_analytic_printed_{k}"] - row[f"N_exact_{k}"])
        if "bs_shift" in wanted:
            row["bs_abs_err"] = abs(row["bs_analytic"] - row["bs_exact"])
    return row


def default_workers() -> int:
    return max(1, min(4, os.cpu_count() or 1))


def tabulate(
    points: list,
    *,
    levels: int,
    observables: Iterable[str],
    methods: str,
    lambda_method: str = "closed",
    n_max: int = DEFAULT_N_MAX,
    unit: str = "omega",
    metadata: Optional[dict] = None,
    workers: Optional[int] = None,
    timing: bool = False,
) -> SweepTable:
    """Evaluate ``points`` on a bounded thread pool; rows keep input order."""
    observables = tuple(o for o in OBSERVABLES if o in set(observables)) if observables else ()
    _check_settings(levels, observables, methods, lambda_method, n_max, unit)
    for p in points:
        _check_point(p, unit)
    columns = point_columns(levels, observables, methods)

    def solve(p: ModelParams) -> list:
        try:
            row = run_point(p, levels, observables, methods, lambda_method=lambda_method, n_max=n_max)
        except RabiError as exc:
            raise type(exc)(f"grid point {p}: {exc}") from exc
        return [float(row[c]) for c in columns]

    started = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers or default_workers()) as pool:
        rows = list(pool.map(solve, points))
    elapsed = time.perf_counter() - started

    meta = {
        "tool": "rabi_jc",
        "version": __version__,
        "unit": "GHz" if unit == "ghz" else "omega",
        "lambda_method": lambda_method,
        "n_max": n_max,
        "levels": levels,
        "observables": ",".join(observables),
        "methods": methods,
    }
    meta.update(metadata or {})
    if timing:
        meta["wall_time_s"] = round(elapsed, 6)
    return SweepTable(columns, rows, meta)


def run_sweep(spec: SweepSpec, *, workers: Optional[int] = None, timing: bool = False) -> SweepTable:
    validate_spec(spec)
    meta = {
        "preset": spec.name,
        "swept": spec.swept,
        "grid": f"{spec.start!r}..{spec.stop!r} ({spec.steps} points)",
    }
    if spec.note:
        meta["note"] = spec.note
    return tabulate(
        spec.points(),
        levels=spec.levels,
        observables=spec.observables,
        methods=spec.methods,
        lambda_method=spec.lambda_method,
        n_max=spec.n_max,
        unit=spec.unit,
        metadata=meta,
        workers=workers,
        timing=timing,
    )


_RANGE_NOTE = "Omega_r range 0.1..2.0 omega is a tool default"

PRESETS = {
    "fig1a": SweepSpec("g", 0.0, 0.5, 51, ModelParams(1.0, 0.5, 0.0), 8, ("energy",), name="fig1a"),
    "fig1b": SweepSpec("g", 0.0, 0.5, 51, ModelParams(1.0, 1.0, 0.0), 8, ("energy",), name="fig1b"),
    "fig1c": SweepSpec("g", 0.0, 0.5, 51, ModelParams(1.0, 1.5, 0.0), 8, ("energy",), name="fig1c"),
    "fig2a": SweepSpec(
        "Omega_r", 0.1, 2.0, 39, ModelParams(1.0, 1.0, 0.1), 8, ("energy",), name="fig2a", note=_RANGE_NOTE
    ),
    "fig2b": SweepSpec(
        "Omega_r", 0.1, 2.0, 39, ModelParams(1.0, 1.0, 0.3), 8, ("energy",), name="fig2b", note=_RANGE_NOTE
    ),
    "fig3": SweepSpec(
        "g", 0.0, 0.3 * 8.13, 31, ModelParams(8.13, 4.25, 0.0), 2, ("bs_shift", "lambda"),
        unit="ghz", name="fig3",
    ),
    "fig4": SweepSpec(
        "Omega_r", 0.1, 2.0, 20, ModelParams(1.0, 1.0, 0.1), 5, ("mean_photon", "lambda"),
        name="fig4", note=_RANGE_NOTE,
    ),
}


def _format(value: float) -> str:
    return format(value, ".11e")


def to_csv(table: SweepTable) -> str:
    buf = io.StringIO()
    for key, value in table.metadata.items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_format(v) for v in row])
    return buf.getvalue()


def to_json(table: SweepTable) -> str:
    for row in table.rows:
        if not all(math.isfinite(v) for v in row):
            raise InvalidSpec("table contains non-finite values")
    doc = {"metadata": table.metadata, "columns": table.columns, "rows": table.rows}
    return json.dumps(doc, allow_nan=False) + "\n"


def emit(table: SweepTable, fmt: str = "csv", destination=None) -> int:
    """Write ``table`` to a path, a text stream, or stdout; return bytes written."""
    if fmt == "csv":
        text = to_csv(table)
    elif fmt == "json":
        text = to_json(table)
    else:
        raise InvalidSpec(f"format must be csv or json, got {fmt!r}")
    data = text.encode("utf-8")
    if destination is None or destination == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        try:
            with open(destination, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise OutputError(f"cannot write {destination}: {exc}") from exc
    return len(data)


def load_json(source) -> SweepTable:
    """Inverse of the JSON form of :func:`emit`."""
    if hasattr(source, "read"):
        doc = json.load(source)
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise OutputError(f"cannot read {source}: {exc}") from exc
    return SweepTable(list(doc["columns"]), [list(r) for r in doc["rows"]], dict(doc["metadata"]))
