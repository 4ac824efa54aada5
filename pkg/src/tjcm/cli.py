"""Command-line driver: ``tjcm <scenario> [options]``.

Writes one table per run (CSV or JSON) whose columns depend only on the
scenario.  Every table starts with a ``curve`` column so presets with several
curves share the schema of single runs.

Exit codes: 0 success, 1 configuration error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import CouplingParams, evolve_states
from .entanglement import reduced_field, reduced_one_atom
from .fock import CutoffError, SdnParams, build_sdn_state, photon_distribution
from .observables import (
    GridSpec,
    RevivalNotFound,
    TimeSeries,
    inversion_series,
    locate_revival,
    phase_distribution,
    revival_time,
    wigner,
    wigner_asymptotic,
)
from .oracle import VALIDATION_TOL, compare_with_oracle
from .presets import PRESETS

SCENARIOS = ("pn", "inversion", "wigner", "wigner-asymptotic", "phase", "tangle-fa", "tangle-ar", "validate")

COLUMNS = {
    "pn": ("curve", "n", "P"),
    "inversion": ("curve", "T", "sigma_z"),
    "wigner": ("curve", "T", "x", "y", "W"),
    "wigner-asymptotic": ("curve", "T", "x", "y", "W"),
    "phase": ("curve", "T", "theta", "P"),
    "tangle-fa": ("curve", "T", "I"),
    "tangle-ar": ("curve", "T", "I"),
    "validate": ("check", "k", "g", "T", "max_abs_diff"),
}

DEFAULTS = {
    "alpha": 2.0,
    "epsilon": 0.0,
    "m": 0,
    "k": 1,
    "g": 1.0,
    "tmax": 50.0,
    "steps": 501,
    "t_list": None,
    "grid": 201,
    "grid_radius": None,
    "cutoff": None,
    "atom": 1,
    "thetas": 720,
    "out": None,
    "format": "csv",
}

VALIDATE_PAIRS = ((1, 1.0), (1, 0.5), (2, 1.0))
VALIDATE_TIMES = (1.0, 3.0, 5.0)


class ConfigError(ValueError):
    """Invalid or incomplete run configuration."""


@dataclass(frozen=True)
class Curve:
    label: str
    sdn: SdnParams
    coupling: CouplingParams
    cutoff: int | None
    times: tuple[float, ...]
    atom: int = 1


@dataclass
class RunConfig:
    scenario: str
    curves: list[Curve]
    grid: GridSpec = field(default_factory=GridSpec)
    thetas: int = 720
    out: str | None = None
    fmt: str = "csv"


# ---------------------------------------------------------------------------
# configuration


def _parse_t_list(value) -> list[float] | None:
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        try:
            return [float(p) for p in parts]
        except ValueError as exc:
            raise ConfigError(f"bad --t-list entry: {exc}") from None
    return [float(v) for v in value]


def _times(values: dict) -> tuple[float, ...]:
    t_list = _parse_t_list(values.get("t_list"))
    if t_list is not None:
        if not t_list:
            raise ConfigError("--t-list is empty")
        return tuple(t_list)
    steps, tmax = int(values["steps"]), float(values["tmax"])
    if steps < 2:
        raise ConfigError(f"--steps must be >= 2, got {steps}")
    if not tmax > 0:
        raise ConfigError(f"--tmax must be > 0, got {tmax}")
    return tuple(float(t) for t in np.linspace(0.0, tmax, steps))


def _load_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a flat JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - set(DEFAULTS) - {"preset", "scenario"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def build_config(scenario: str, flags: dict, file_values: dict | None = None) -> RunConfig:
    """Merge defaults, preset, config file and flags (later wins)."""
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r}")
    file_values = dict(file_values or {})
    if file_values.pop("scenario", scenario) != scenario:
        raise ConfigError("config file names a different scenario")
    flags = {k: v for k, v in flags.items() if v is not None}
    preset_name = flags.pop("preset", None) or file_values.pop("preset", None)
    file_values.pop("preset", None)

    base = dict(DEFAULTS)
    curve_overrides = [("default", {})]
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ConfigError(f"unknown preset {preset_name!r}; choose from {sorted(PRESETS)}")
        preset = PRESETS[preset_name]
        if preset["scenario"] != scenario:
            raise ConfigError(f"preset {preset_name} belongs to scenario {preset['scenario']!r}")
        base.update(preset["base"])
        curve_overrides = preset["curves"]
    top = {**file_values, **flags}

    curves = []
    for label, over in curve_overrides:
        values = {**base, **over, **top}
        if ("tmax" in top or "steps" in top) and "t_list" not in top:
            values["t_list"] = None
        try:
            sdn = SdnParams(float(values["alpha"]), float(values["epsilon"]), int(values["m"]))
            coupling = CouplingParams(int(values["k"]), float(values["g"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        needs_times = scenario not in ("pn", "validate")
        if scenario in ("wigner", "wigner-asymptotic", "phase") and values.get("t_list") is None:
            raise ConfigError(f"scenario {scenario} needs --t-list")
        times = _times(values) if needs_times or values.get("t_list") is not None else ()
        atom = int(values["atom"])
        if atom not in (1, 2):
            raise ConfigError("--atom must be 1 or 2")
        cutoff = values["cutoff"]
        curves.append(Curve(label, sdn, coupling, None if cutoff is None else int(cutoff), times, atom))

    merged = {**base, **top}
    if merged["format"] not in ("csv", "json"):
        raise ConfigError("--format must be csv or json")
    if int(merged["grid"]) < 3:
        raise ConfigError("--grid must be >= 3")
    if int(merged["thetas"]) < 64:
        raise ConfigError("--thetas must be >= 64")
    radius = merged["grid_radius"]
    grid = GridSpec(int(merged["grid"]), None if radius is None else float(radius))
    return RunConfig(scenario, curves, grid, int(merged["thetas"]), merged["out"], merged["format"])


# ---------------------------------------------------------------------------
# evaluation


def _threads() -> int:
    raw = os.environ.get("TJCM_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"TJCM_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _pmap(fn, items):
    items = list(items)
    n = min(_threads(), len(items))
    if n <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _field(curve: Curve):
    return build_sdn_state(curve.sdn, curve.cutoff, k=curve.coupling.k)


def _run_pn(curve, config):
    p = photon_distribution(_field(curve))
    return [(curve.label, n, float(v)) for n, v in enumerate(p)], {}


def _run_inversion(curve, config):
    f = _field(curve)
    series = inversion_series(f, curve.coupling, curve.times)
    meta = {"revival_time_formula": revival_time(f)}
    try:
        meta["revival_time_located"] = locate_revival(TimeSeries(series.times, series.values))
    except (RevivalNotFound, ValueError) as exc:
        meta["revival_time_located"] = None
        meta["revival_note"] = str(exc)
    rows = [(curve.label, float(t), float(v)) for t, v in zip(series.times, series.values)]
    return rows, meta


def _run_wigner(curve, config):
    f = _field(curve)
    axis = config.grid.axis(curve.sdn.alpha)
    rows = []
    for state in evolve_states(f, curve.coupling, curve.times):
        w = wigner(state, x_axis=axis)
        rows += _grid_rows(curve.label, state.T, w)
    return rows, {}


def _run_wigner_asymptotic(curve, config):
    axis = config.grid.axis(curve.sdn.alpha)
    rows = []
    for t in curve.times:
        rows += _grid_rows(curve.label, t, wigner_asymptotic(curve.sdn.alpha, t, x_axis=axis))
    return rows, {}


def _grid_rows(label, t, w):
    return [
        (label, float(t), float(x), float(y), float(w.values[i, j]))
        for i, x in enumerate(w.x_axis)
        for j, y in enumerate(w.y_axis)
    ]


def _run_phase(curve, config):
    f = _field(curve)
    rows = []
    for state in evolve_states(f, curve.coupling, curve.times):
        pd = phase_distribution(state, config.thetas)
        rows += [(curve.label, state.T, float(th), float(v)) for th, v in zip(pd.thetas, pd.values)]
    return rows, {}


def _run_tangle(curve, config, one_atom):
    f = _field(curve)
    states = evolve_states(f, curve.coupling, curve.times)

    def tangle(state):
        rho = reduced_one_atom(state, curve.atom) if one_atom else reduced_field(state)
        return 2.0 * (1.0 - rho.purity())

    values = _pmap(tangle, states)
    return [(curve.label, s.T, float(v)) for s, v in zip(states, values)], {}


def _run_validate(curve, config):
    f = _field(curve)
    times = curve.times or VALIDATE_TIMES
    rows = []
    for k, g in VALIDATE_PAIRS:
        params = CouplingParams(k, g)
        for t in times:
            diffs = compare_with_oracle(f, params, t)
            rows += [(name, k, g, float(t), float(v)) for name, v in diffs.items()]
    return rows, {}


RUNNERS = {
    "pn": _run_pn,
    "inversion": _run_inversion,
    "wigner": _run_wigner,
    "wigner-asymptotic": _run_wigner_asymptotic,
    "phase": _run_phase,
    "tangle-fa": lambda c, cfg: _run_tangle(c, cfg, one_atom=False),
    "tangle-ar": lambda c, cfg: _run_tangle(c, cfg, one_atom=True),
    "validate": _run_validate,
}


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def render(config: RunConfig, rows, meta) -> str:
    columns = COLUMNS[config.scenario]
    if config.fmt == "json":
        doc = {"scenario": config.scenario, "columns": list(columns), "rows": [list(r) for r in rows],
               "meta": meta}
        return json.dumps(doc, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def run(config: RunConfig) -> int:
    """Evaluate ``config``, write its table, and return the exit status."""
    runner = RUNNERS[config.scenario]
    rows, meta = [], {}
    for curve in config.curves:
        r, m = runner(curve, config)
        rows += r
        if m:
            meta[curve.label] = m
    text = render(config, rows, meta)
    if config.out:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for label, m in meta.items():
        if "revival_time_formula" in m:
            located = m["revival_time_located"]
            found = "not found" if located is None else f"{located:.6f}"
            print(f"{label}: revival time formula {m['revival_time_formula']:.6f}, located {found}",
                  file=sys.stderr)
    if config.scenario == "validate":
        worst = max((r[-1] for r in rows), default=0.0)
        if not worst < VALIDATION_TOL:
            print(f"validation failed: max diff {worst:.3e} >= {VALIDATION_TOL:g}", file=sys.stderr)
            return 2
        print(f"validation passed: max diff {worst:.3e}", file=sys.stderr)
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad input, which is reserved for failed validation
    def error(self, message):
        raise ConfigError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tjcm", description=__doc__.splitlines()[0])
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--t-list", dest="t_list", help="comma separated scaled times")
    p.add_argument("--grid", type=int, help="points per phase-space axis")
    p.add_argument("--grid-radius", dest="grid_radius", type=float)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--atom", type=int, help="atom for tangle-ar (1 or 2)")
    p.add_argument("--thetas", type=int, help="phase samples on [-pi, pi]")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--config", help="flat JSON file of option values")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def main(argv=None) -> int:
    try:
        flags = vars(_parser().parse_args(argv))
        scenario = flags.pop("scenario")
        path = flags.pop("config")
        file_values = _load_file(path) if path else None
        config = build_config(scenario, flags, file_values)
        return run(config)
    except (ConfigError, CutoffError, ValueError) as exc:
        print(f"tjcm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
