"""Batch driver: validated sweep configs, deterministic grid execution,
and dataset output with provenance.

Datasets are a CSV table (one row per grid point and observable, fixed
column order) plus a JSON metadata sidecar carrying the full config echo,
config digest, library versions, tolerances, and timing.  Timing and
timestamps never enter the CSV, so repeated runs of one config produce
byte-identical data files regardless of worker count.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bands import DEFAULT_GRID_SIZE, MIN_GRID_SIZE, _count_with_detail
from .errors import (
    ConfigError,
    ConvergenceError,
    FloquetResonanceError,
    NoUniqueSteadyStateError,
    SingularDispersionError,
    UnresolvedBandStructureError,
)
from .liouville import (
    DENSE_SUPEROP_MAX_SITES,
    NEAREST,
    RangeSpec,
    floquet_from_free_propagator,
    free_propagator,
    local_correlators,
    local_residual,
    majorana_correlations_full,
)
from .lyap import RESIDUAL_TOL, STABILITY_TOL
from .models import BathRates, ChainParams, KickParams, residual_correlation
from .pipelines import kicked_floquet, static_ness

MODELS = ("static", "kicked-cov", "kicked-full", "bands")
OBSERVABLE_CHOICES = ("fermionic", "local", "both")
CUT_SCANS = {"static": ("gamma", "h"), "kicked-cov": ("tau",), "kicked-full": ("tau",)}

CSV_COLUMNS = (
    "model",
    "N",
    "gamma",
    "alpha_or_nn",
    "a",
    "tau",
    "h",
    "observable",
    "value",
    "residual",
    "gap",
    "status",
    "config_digest",
)

#: Errors that mask a single grid point instead of aborting the sweep.
MASKABLE_ERRORS = (
    NoUniqueSteadyStateError,
    FloquetResonanceError,
    ConvergenceError,
    SingularDispersionError,
    UnresolvedBandStructureError,
)

TOLERANCES = {
    "stability_tol": STABILITY_TOL,
    "lyapunov_residual_tol": RESIDUAL_TOL,
    "floquet_residual_tol": 1e-9,
    "positivity_tol": -1e-8,
}


# --------------------------------------------------------------------------
# configuration schema


def _package_defaults():
    return {
        "model": None,
        "chain": {
            "n_sites": None,
            "gamma": None,
            "h": None,
            "bath": {"gamma_1l": 0.5, "gamma_2l": 0.3, "gamma_1r": 0.5, "gamma_2r": 0.1},
        },
        "grid": {},
        "cut": {},
        "observables": {
            "which": "fermionic",
            "distance_convention": "site",
            "symmetrize_xy": False,
        },
        "range": {"kind": "nearest-neighbor", "alpha": None},
        "kick": {"a": None, "placement": "free-then-kick", "fixed_point_method": "solve"},
        "bands": {"grid_size": DEFAULT_GRID_SIZE},
        "run": {"workers": 1, "memory_budget_mb": 4096, "output_name": None, "seed": None},
    }


_KNOWN_KEYS = {
    "": {"model", "chain", "grid", "cut", "observables", "range", "kick", "bands", "run"},
    "chain": {"n_sites", "gamma", "h", "bath"},
    "chain.bath": {"gamma_1l", "gamma_2l", "gamma_1r", "gamma_2r"},
    "grid": {
        "gamma_min", "gamma_max", "gamma_steps",
        "h_min", "h_max", "h_steps",
        "a_min", "a_max", "a_steps",
        "tau_min", "tau_max", "tau_steps",
    },
    "cut": {"n_list", "scan", "scan_min", "scan_max", "scan_steps"},
    "observables": {"which", "distance_convention", "symmetrize_xy"},
    "range": {"kind", "alpha"},
    "kick": {"a", "placement", "fixed_point_method"},
    "bands": {"grid_size"},
    "run": {"workers", "memory_budget_mb", "output_name", "seed"},
}


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep configuration with defaults injected.

    ``echo`` is the fully normalized dict written into dataset metadata;
    ``digest`` hashes only the science-defining fields, so execution knobs
    (workers, memory budget, output name, seed) never change it.
    """

    echo: dict
    digest: str
    notes: tuple[str, ...] = ()
    is_cut: bool = False

    @property
    def model(self) -> str:
        return self.echo["model"]

    def section(self, name: str) -> dict:
        return self.echo[name]


def _science_digest(echo: dict) -> str:
    science = {k: v for k, v in echo.items() if k != "run"}
    science["tolerances"] = TOLERANCES
    blob = json.dumps(science, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _reject_unknown_keys(raw: dict, errors: list[str]):
    def walk(section: dict, path: str):
        allowed = _KNOWN_KEYS.get(path)
        if allowed is None:
            return
        for key, value in section.items():
            if key not in allowed:
                where = f"{path}.{key}" if path else key
                errors.append(f"unknown key '{where}'")
                continue
            if isinstance(value, dict):
                walk(value, f"{path}.{key}" if path else key)

    walk(raw, "")


def _get(raw: dict, path: str):
    node = raw
    for part in path.split("."):
        if not isinstance(node, dict) or part not in node:
            return None
        node = node[part]
    return node


def _need_number(raw, path, errors, *, low=None, high=None, strict_low=False, integer=False):
    value = _get(raw, path)
    if value is None:
        errors.append(f"missing required field '{path}'")
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        errors.append(f"field '{path}' must be a finite number, got {value!r}")
        return None
    if integer and int(value) != value:
        errors.append(f"field '{path}' must be an integer, got {value!r}")
        return None
    if low is not None and (value <= low if strict_low else value < low):
        op = ">" if strict_low else ">="
        errors.append(f"field '{path}' must be {op} {low}, got {value}")
        return None
    if high is not None and value > high:
        errors.append(f"field '{path}' must be <= {high}, got {value}")
        return None
    return int(value) if integer else float(value)


def _need_axis(raw, errors, section, axis, *, low=None, high=None, strict_low=False):
    lo = _need_number(raw, f"{section}.{axis}_min", errors, low=low, strict_low=strict_low)
    hi = _need_number(raw, f"{section}.{axis}_max", errors, low=low, high=high, strict_low=strict_low)
    steps = _need_number(raw, f"{section}.{axis}_steps", errors, low=1, integer=True)
    if None in (lo, hi, steps):
        return None
    if hi < lo:
        errors.append(f"field '{section}.{axis}_max' must be >= '{section}.{axis}_min'")
        return None
    return {"min": lo, "max": hi, "steps": steps}


def _need_choice(raw, path, errors, choices, default=None):
    value = _get(raw, path)
    if value is None:
        if default is not None:
            return default
        errors.append(f"missing required field '{path}' (one of {choices})")
        return None
    if value not in choices:
        errors.append(f"field '{path}' must be one of {choices}, got {value!r}")
        return None
    return value


def _validate_bath(raw, errors):
    rates = {}
    for name in ("gamma_1l", "gamma_2l", "gamma_1r", "gamma_2r"):
        value = _get(raw, f"chain.bath.{name}")
        if value is None:
            rates[name] = _package_defaults()["chain"]["bath"][name]
        else:
            checked = _need_number(raw, f"chain.bath.{name}", errors, low=0.0)
            rates[name] = checked if checked is not None else 0.0
    if all(v == 0 for v in rates.values()):
        errors.append("chain.bath: all rates are zero; no unique steady state possible")
    return rates


def validate_config(raw, *, cut: bool = False) -> SweepConfig:
    """Validate a parsed config mapping and inject defaults.

    Raises ConfigError carrying the exhaustive list of problems; never
    stops at the first one.
    """
    if not isinstance(raw, dict):
        raise ConfigError(["config root must be a table/object"])
    errors: list[str] = []
    notes: list[str] = []
    _reject_unknown_keys(raw, errors)

    model = _need_choice(raw, "model", errors, MODELS)
    if model is None:
        base = ["chain.n_sites", "grid.*_min/*_max/*_steps (axes depend on model)"]
        for path in base:
            errors.append(f"missing required field '{path}'")
        raise ConfigError(sorted(set(errors)))

    echo = _package_defaults()
    echo["model"] = model
    echo["chain"]["bath"] = _validate_bath(raw, errors)

    needs_sites = model != "bands" and not cut  # cut sizes come from cut.n_list
    if needs_sites:
        echo["chain"]["n_sites"] = _need_number(raw, "chain.n_sites", errors, low=2, integer=True)
    if model == "kicked-full":
        if echo["chain"]["n_sites"] is not None and echo["chain"]["n_sites"] > DENSE_SUPEROP_MAX_SITES:
            errors.append(
                f"field 'chain.n_sites' must be <= {DENSE_SUPEROP_MAX_SITES} for kicked-full sweeps"
            )

    # observables
    which = _need_choice(raw, "observables.which", errors, OBSERVABLE_CHOICES, default="fermionic")
    if model in ("static", "kicked-cov") and which in ("local", "both"):
        errors.append(
            f"observables.which = {which!r} requires the kicked-full model "
            "(spin-local correlators need the density matrix)"
        )
    echo["observables"]["which"] = which
    echo["observables"]["distance_convention"] = _need_choice(
        raw, "observables.distance_convention", errors, ("site", "majorana"), default="site"
    )
    sym = _get(raw, "observables.symmetrize_xy")
    if sym is not None and not isinstance(sym, bool):
        errors.append("field 'observables.symmetrize_xy' must be a boolean")
    echo["observables"]["symmetrize_xy"] = bool(sym) if isinstance(sym, bool) else False

    # interaction range
    kind = _need_choice(
        raw, "range.kind", errors, ("nearest-neighbor", "power-law"), default="nearest-neighbor"
    )
    echo["range"]["kind"] = kind
    if kind == "power-law":
        echo["range"]["alpha"] = _need_number(raw, "range.alpha", errors, low=0.0, strict_low=True)
        if model in ("static", "kicked-cov", "bands"):
            errors.append("range.kind = 'power-law' requires the kicked-full model")
    elif _get(raw, "range.alpha") is not None:
        notes.append("range.alpha ignored for nearest-neighbor range")

    # kick section
    echo["kick"]["placement"] = _need_choice(
        raw, "kick.placement", errors, ("free-then-kick", "kick-then-free"),
        default="free-then-kick",
    )
    echo["kick"]["fixed_point_method"] = _need_choice(
        raw, "kick.fixed_point_method", errors, ("solve", "eig"), default="solve"
    )

    # bands section
    grid_size = _get(raw, "bands.grid_size")
    if grid_size is not None:
        checked = _need_number(raw, "bands.grid_size", errors, low=MIN_GRID_SIZE, integer=True)
        echo["bands"]["grid_size"] = checked if checked is not None else DEFAULT_GRID_SIZE

    # run section
    workers = _get(raw, "run.workers")
    if workers is not None:
        checked = _need_number(raw, "run.workers", errors, low=1, integer=True)
        echo["run"]["workers"] = checked if checked is not None else 1
    budget = _get(raw, "run.memory_budget_mb")
    if budget is not None:
        checked = _need_number(raw, "run.memory_budget_mb", errors, low=1, integer=True)
        echo["run"]["memory_budget_mb"] = checked if checked is not None else 4096
    name = _get(raw, "run.output_name")
    if name is not None and not isinstance(name, str):
        errors.append("field 'run.output_name' must be a string")
    else:
        echo["run"]["output_name"] = name
    seed = _get(raw, "run.seed")
    if seed is not None:
        echo["run"]["seed"] = _need_number(raw, "run.seed", errors, integer=True)
        notes.append("run.seed is reserved; all current algorithms are deterministic")

    # grid or cut axes
    if cut:
        n_list = _get(raw, "cut.n_list")
        if not isinstance(n_list, list) or not n_list or not all(
            isinstance(n, int) and not isinstance(n, bool) and n >= 2 for n in n_list
        ):
            errors.append("field 'cut.n_list' must be a non-empty list of integers >= 2")
        else:
            echo["cut"]["n_list"] = list(n_list)
            if model == "kicked-full" and max(n_list) > DENSE_SUPEROP_MAX_SITES:
                errors.append(
                    f"cut.n_list entries must be <= {DENSE_SUPEROP_MAX_SITES} for kicked-full"
                )
        scans = CUT_SCANS.get(model, ())
        scan = _need_choice(raw, "cut.scan", errors, scans) if scans else None
        echo["cut"]["scan"] = scan
        lo_bound = 0.0 if scan in ("gamma", "tau") else None
        strict = scan == "tau"
        axis = {
            "min": _need_number(raw, "cut.scan_min", errors, low=lo_bound, strict_low=strict),
            "max": _need_number(raw, "cut.scan_max", errors, low=lo_bound, strict_low=strict),
            "steps": _need_number(raw, "cut.scan_steps", errors, low=1, integer=True),
        }
        if None not in axis.values():
            if axis["max"] < axis["min"]:
                errors.append("field 'cut.scan_max' must be >= 'cut.scan_min'")
            if scan == "gamma" and axis["max"] > 1.0:
                errors.append("field 'cut.scan_max' must be <= 1 when scanning gamma")
            echo["cut"].update(
                {"scan_min": axis["min"], "scan_max": axis["max"], "scan_steps": axis["steps"]}
            )
        if scan == "gamma":
            echo["chain"]["h"] = _need_number(raw, "chain.h", errors)
        elif scan == "h":
            echo["chain"]["gamma"] = _need_number(raw, "chain.gamma", errors, low=0.0, high=1.0)
        elif scan == "tau":
            echo["chain"]["gamma"] = _need_number(raw, "chain.gamma", errors, low=0.0, high=1.0)
            echo["kick"]["a"] = _need_number(raw, "kick.a", errors)
            if echo["kick"]["a"] is not None and not 0 <= echo["kick"]["a"] < math.pi / 2:
                notes.append("kick.a outside [0, pi/2); it is folded modulo pi/2")
    elif model == "static":
        gamma_axis = _need_axis(raw, errors, "grid", "gamma", low=0.0, high=1.0)
        h_axis = _need_axis(raw, errors, "grid", "h")
        echo["grid"] = {"gamma": gamma_axis, "h": h_axis}
    else:  # kicked-cov, kicked-full, bands share (a, tau) grids
        a_axis = _need_axis(raw, errors, "grid", "a")
        tau_axis = _need_axis(raw, errors, "grid", "tau", low=0.0, strict_low=True)
        echo["grid"] = {"a": a_axis, "tau": tau_axis}
        if a_axis and (a_axis["min"] < 0 or a_axis["max"] >= math.pi / 2):
            notes.append("kick strengths outside [0, pi/2) are folded modulo pi/2")
        echo["chain"]["gamma"] = _need_number(raw, "chain.gamma", errors, low=0.0, high=1.0)

    if errors:
        raise ConfigError(sorted(set(errors)))
    echo["notes"] = sorted(notes)
    return SweepConfig(echo=echo, digest=_science_digest(echo), notes=tuple(sorted(notes)), is_cut=cut)


def parse_config_text(text: str, fmt: str = "toml") -> dict:
    if fmt == "toml":
        try:
            import tomllib as toml_reader  # Python >= 3.11
        except ModuleNotFoundError:
            import tomli as toml_reader
        try:
            return toml_reader.loads(text)
        except toml_reader.TOMLDecodeError as exc:
            raise ConfigError([f"TOML parse error: {exc}"]) from exc
    if fmt == "json":
        try:
            parsed = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"JSON parse error: {exc}"]) from exc
        if not isinstance(parsed, dict):
            raise ConfigError(["JSON config must be an object"])
        return parsed
    raise ConfigError([f"unknown config format {fmt!r} (use toml or json)"])


def load_config(path: str, *, cut: bool = False) -> SweepConfig:
    fmt = "json" if str(path).endswith(".json") else "toml"
    with open(path, "r", encoding="utf-8") as fh:
        raw = parse_config_text(fh.read(), fmt)
    return validate_config(raw, cut=cut)


# --------------------------------------------------------------------------
# grid execution


def _axis_values(axis: dict) -> np.ndarray:
    return np.linspace(axis["min"], axis["max"], axis["steps"])


def _bath_from_echo(echo: dict) -> BathRates:
    return BathRates(**echo["chain"]["bath"])


def _range_from_echo(echo: dict) -> RangeSpec:
    if echo["range"]["kind"] == "power-law":
        return RangeSpec("power-law", echo["range"]["alpha"])
    return NEAREST


def _alpha_or_nn(echo: dict):
    return echo["range"]["alpha"] if echo["range"]["kind"] == "power-law" else "nn"


def _blank_record(config: SweepConfig) -> dict:
    return {key: None for key in CSV_COLUMNS} | {
        "model": config.model,
        "alpha_or_nn": _alpha_or_nn(config.echo),
        "config_digest": config.digest,
        "status": "ok",
    }


def _eval_static_point(echo, n_sites, gamma, h):
    """One static grid point -> list of result dicts (statistics only)."""
    params = ChainParams(n_sites=n_sites, gamma=gamma, h=h, bath=_bath_from_echo(echo))
    convention = echo["observables"]["distance_convention"]
    try:
        c = static_ness(params)
    except MASKABLE_ERRORS as exc:
        return [{"observable": "c_res", "value": None, "residual": None, "gap": None,
                 "status": f"error:{type(exc).__name__}"}]
    value = residual_correlation(c, n_sites, convention)
    return [{"observable": "c_res", "value": value, "residual": c.meta.get("residual"),
             "gap": c.meta.get("gap"), "status": "ok"}]


def _eval_kicked_cov_point(echo, n_sites, gamma, a, tau):
    params = ChainParams(n_sites=n_sites, gamma=gamma, bath=_bath_from_echo(echo))
    convention = echo["observables"]["distance_convention"]
    try:
        c = kicked_floquet(params, KickParams(a=a, tau=tau), placement=echo["kick"]["placement"])
    except MASKABLE_ERRORS as exc:
        return [{"observable": "c_res", "value": None, "residual": None, "gap": None,
                 "status": f"error:{type(exc).__name__}"}]
    value = residual_correlation(c, n_sites, convention)
    return [{"observable": "c_res", "value": value, "residual": c.meta.get("residual"),
             "gap": c.meta.get("gap"), "status": "ok"}]


def _eval_bands_point(echo, gamma, a, tau):
    try:
        count, warning = _count_with_detail(gamma, a / tau, tau, echo["bands"]["grid_size"])
    except MASKABLE_ERRORS as exc:
        return [{"observable": "band_count", "value": None, "residual": None, "gap": None,
                 "status": f"error:{type(exc).__name__}"}]
    status = "ok" if warning is None else f"warning:{warning}"
    return [{"observable": "band_count", "value": float(count), "residual": None, "gap": None,
             "status": status}]


def _kicked_full_observables(echo, rho, n_sites):
    results = []
    which = echo["observables"]["which"]
    if which in ("fermionic", "both"):
        c = majorana_correlations_full(rho)
        value = residual_correlation(c, n_sites, echo["observables"]["distance_convention"])
        results.append({"observable": "c_res", "value": value,
                        "residual": rho.meta.get("residual"), "gap": rho.meta.get("gap"),
                        "status": "ok"})
    if which in ("local", "both"):
        cxx, cxy, cyy = local_correlators(rho)
        value = local_residual(cxx, cxy, cyy, n_sites,
                               symmetrize_xy=echo["observables"]["symmetrize_xy"])
        results.append({"observable": "c_res_loc", "value": value,
                        "residual": rho.meta.get("residual"), "gap": rho.meta.get("gap"),
                        "status": "ok"})
    return results


def _masked_full_results(echo, exc):
    which = echo["observables"]["which"]
    names = {"fermionic": ["c_res"], "local": ["c_res_loc"], "both": ["c_res", "c_res_loc"]}
    return [{"observable": name, "value": None, "residual": None, "gap": None,
             "status": f"error:{type(exc).__name__}"} for name in names[which]]


def _eval_kicked_full_column(echo, n_sites, gamma, tau, a_values):
    """All kick strengths at one period share the expensive exp(L0 tau)."""
    params = ChainParams(n_sites=n_sites, gamma=gamma, bath=_bath_from_echo(echo))
    range_spec = _range_from_echo(echo)
    free = free_propagator(params, range_spec, tau)
    column = []
    for a in a_values:
        try:
            rho = floquet_from_free_propagator(
                free, n_sites, a,
                placement=echo["kick"]["placement"],
                method=echo["kick"]["fixed_point_method"],
            )
            column.append(_kicked_full_observables(echo, rho, n_sites))
        except MASKABLE_ERRORS as exc:
            column.append(_masked_full_results(echo, exc))
    return column


def _run_task(task):
    kind, payload = task
    if kind == "static":
        return _eval_static_point(*payload)
    if kind == "kicked-cov":
        return _eval_kicked_cov_point(*payload)
    if kind == "bands":
        return _eval_bands_point(*payload)
    if kind == "kicked-full-column":
        return _eval_kicked_full_column(*payload)
    raise ValueError(f"unknown task kind {kind!r}")


def _execute_tasks(tasks, workers: int):
    """Run tasks preserving order; inline when a single worker suffices."""
    if workers <= 1 or len(tasks) <= 1:
        return [_run_task(task) for task in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks, chunksize=1))


def _effective_workers(config: SweepConfig, n_tasks: int) -> int:
    workers = config.echo["run"]["workers"]
    if config.model == "kicked-full" and config.echo["chain"]["n_sites"] is not None:
        dim = 4 ** config.echo["chain"]["n_sites"]
        per_job_mb = max(1, int(6 * dim * dim * 16 / 1e6))
        budget = config.echo["run"]["memory_budget_mb"]
        workers = min(workers, max(1, budget // per_job_mb))
    return max(1, min(workers, n_tasks))


@dataclass
class SweepDataset:
    """Grid results plus provenance; one record per point and observable."""

    records: list[dict]
    config: SweepConfig
    meta: dict = field(default_factory=dict)

    @property
    def masked_count(self) -> int:
        return sum(1 for r in self.records if r["status"].startswith("error"))

    def values(self, observable: str = "c_res") -> list:
        return [r["value"] for r in self.records if r["observable"] == observable]

    def write(self, out_dir: str, name: str | None = None) -> tuple[str, str]:
        """Atomically write <name>.csv and <name>.meta.json into out_dir."""
        os.makedirs(out_dir, exist_ok=True)
        stem = name or self.config.echo["run"]["output_name"] or (
            f"{self.config.model}-{self.config.digest[:12]}"
        )
        csv_path = os.path.join(out_dir, f"{stem}.csv")
        json_path = os.path.join(out_dir, f"{stem}.meta.json")
        _atomic_write(csv_path, self.to_csv())
        sidecar = dict(self.meta)
        sidecar.update(
            {
                "config": self.config.echo,
                "config_digest": self.config.digest,
                "columns": list(CSV_COLUMNS),
                "tolerances": TOLERANCES,
                "versions": _versions(),
                "masked_cells": self.masked_count,
                "record_count": len(self.records),
            }
        )
        _atomic_write(json_path, json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
        return csv_path, json_path

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for record in self.records:
            lines.append(",".join(_format_cell(record[col]) for col in CSV_COLUMNS))
        return "\n".join(lines) + "\n"


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    # repr of a Python float is the shortest digit string that round-trips,
    # so values stay lossless and byte-stable across runs.
    return repr(float(value))


def _versions() -> dict:
    import scipy

    return {"drivenchain": __version__, "numpy": np.__version__, "scipy": scipy.__version__}


def _atomic_write(path: str, content: str):
    directory = os.path.dirname(os.path.abspath(path))
    handle, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def _finalize(config, records, started, task_seconds):
    dataset = SweepDataset(records=records, config=config)
    dataset.meta = {
        "started_unix": started,
        "elapsed_seconds": time.time() - started,
        "task_seconds": task_seconds,
        "notes": list(config.notes),
    }
    return dataset


def run_sweep(config: SweepConfig) -> SweepDataset:
    """Evaluate every grid point of a validated sweep config.

    Grid order is row-major in the axes' declared order (static: gamma
    outer, h inner; kicked/bands: a outer, tau inner); records follow that
    order with one row per observable.  Failed points are masked with an
    error status, never silently filled.
    """
    if config.is_cut:
        raise ValueError("run_sweep got a cut config; use run_cut")
    echo = config.echo
    started = time.time()
    if config.model == "static":
        gammas = _axis_values(echo["grid"]["gamma"])
        hs = _axis_values(echo["grid"]["h"])
        n = echo["chain"]["n_sites"]
        tasks = [("static", (echo, n, g, h)) for g in gammas for h in hs]
        points = [
            {"N": n, "gamma": g, "h": h, "a": None, "tau": None} for g in gammas for h in hs
        ]
    elif config.model in ("kicked-cov", "bands"):
        a_values = _axis_values(echo["grid"]["a"])
        tau_values = _axis_values(echo["grid"]["tau"])
        gamma = echo["chain"]["gamma"]
        if config.model == "kicked-cov":
            n = echo["chain"]["n_sites"]
            tasks = [
                ("kicked-cov", (echo, n, gamma, a, tau)) for a in a_values for tau in tau_values
            ]
        else:
            n = None
            tasks = [("bands", (echo, gamma, a, tau)) for a in a_values for tau in tau_values]
        points = [
            {"N": n, "gamma": gamma, "h": a / tau, "a": a, "tau": tau}
            for a in a_values
            for tau in tau_values
        ]
    elif config.model == "kicked-full":
        return _run_kicked_full(config, started)
    else:  # pragma: no cover - validation precludes this
        raise ValueError(f"unknown model {config.model!r}")

    workers = _effective_workers(config, len(tasks))
    t0 = time.time()
    results = _execute_tasks(tasks, workers)
    task_seconds = time.time() - t0
    records = []
    for point, point_results in zip(points, results):
        for result in point_results:
            record = _blank_record(config)
            record.update(point)
            record.update(result)
            records.append(record)
    return _finalize(config, records, started, task_seconds)


def _run_kicked_full(config: SweepConfig, started: float) -> SweepDataset:
    """Kicked-full grids run one task per period value so every kick
    strength in a column reuses the same free-evolution exponential."""
    echo = config.echo
    a_values = _axis_values(echo["grid"]["a"])
    tau_values = _axis_values(echo["grid"]["tau"])
    gamma = echo["chain"]["gamma"]
    n = echo["chain"]["n_sites"]
    tasks = [
        ("kicked-full-column", (echo, n, gamma, tau, list(a_values))) for tau in tau_values
    ]
    workers = _effective_workers(config, len(tasks))
    t0 = time.time()
    columns = _execute_tasks(tasks, workers)
    task_seconds = time.time() - t0
    records = []
    for i_a, a in enumerate(a_values):
        for i_tau, tau in enumerate(tau_values):
            for result in columns[i_tau][i_a]:
                record = _blank_record(config)
                record.update({"N": n, "gamma": gamma, "a": a, "tau": tau, "h": a / tau})
                record.update(result)
                records.append(record)
    return _finalize(config, records, started, task_seconds)


def run_cut(config: SweepConfig) -> SweepDataset:
    """One curve per chain size: scan a single axis at fixed companions."""
    if not config.is_cut:
        raise ValueError("run_cut needs a config validated with cut=True")
    echo = config.echo
    started = time.time()
    scan = echo["cut"]["scan"]
    values = np.linspace(echo["cut"]["scan_min"], echo["cut"]["scan_max"], echo["cut"]["scan_steps"])
    tasks = []
    points = []
    for n in echo["cut"]["n_list"]:
        for value in values:
            if config.model == "static":
                gamma = value if scan == "gamma" else echo["chain"]["gamma"]
                h = value if scan == "h" else echo["chain"]["h"]
                tasks.append(("static", (echo, n, gamma, h)))
                points.append({"N": n, "gamma": gamma, "h": h, "a": None, "tau": None})
            elif config.model == "kicked-cov":
                a = echo["kick"]["a"]
                tasks.append(("kicked-cov", (echo, n, echo["chain"]["gamma"], a, value)))
                points.append(
                    {"N": n, "gamma": echo["chain"]["gamma"], "a": a, "tau": value, "h": a / value}
                )
            else:  # kicked-full
                a = echo["kick"]["a"]
                tasks.append(("kicked-full-column", (echo, n, echo["chain"]["gamma"], value, [a])))
                points.append(
                    {"N": n, "gamma": echo["chain"]["gamma"], "a": a, "tau": value, "h": a / value}
                )
    workers = _effective_workers(config, len(tasks))
    t0 = time.time()
    results = _execute_tasks(tasks, workers)
    task_seconds = time.time() - t0
    records = []
    for point, result in zip(points, results):
        point_results = result[0] if config.model == "kicked-full" else result
        for item in point_results:
            record = _blank_record(config)
            record.update(point)
            record.update(item)
            records.append(record)
    return _finalize(config, records, started, task_seconds)
