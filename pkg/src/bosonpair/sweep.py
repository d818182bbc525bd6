"""Parameter sweeps, configuration files, figure presets and CSV/gnuplot output."""

import hashlib
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .correlations import (
    default_k_grid,
    momentum_distribution,
    natural_orbitals,
    rspdm,
    schmidt_number,
    von_neumann_entropy,
)
from .dvr import DEFAULT_H, DEFAULT_N, MAP_H, MAP_N, make_grid
from .exceptions import BosonPairError, ConfigError
from .hubbard import entropy_surface
from .single import solve_single
from .two_body import lowest_band, transition_moments
from .validation import check_grid_spec

log = logging.getLogger(__name__)

OBSERVABLES = ("spectrum", "wavefunction", "rspdm", "momentum", "entropy", "schmidt", "moments", "hubbard-surface")
CONFIG_KEYS = ("N", "h", "kappa", "g1d", "states", "observables", "kgrid", "J", "U", "eps", "preset")
SCHMIDT_THRESHOLD = 1e-3
SINGLE_LEVELS = 6
FLOAT_FMT = "{:.12e}"


@dataclass(frozen=True)
class SweepConfig:
    n_points: int = DEFAULT_N
    spacing: float = DEFAULT_H
    kappa: tuple = (0.0,)
    g1d: tuple = (0.0,)
    states: tuple = (0, 1, 2, 3)
    observables: tuple = ("spectrum",)
    kgrid: object = None  # None -> Nyquist band with 4N+1 points, else (start, stop, step)
    J: tuple = (1.0,)
    U: tuple = (1.0,)
    eps: float = 0.0
    preset: object = None

    def points(self):
        return [(k, g) for k in sorted(set(self.kappa)) for g in sorted(set(self.g1d))]

    def grid(self):
        return make_grid(self.n_points, self.spacing)

    def k_values(self):
        if self.kgrid is None:
            return default_k_grid(self.grid())
        return _expand_range(*self.kgrid)

    @property
    def single_particle(self):
        return self.preset == "fig1"


@dataclass(frozen=True)
class ResultRow:
    """One computed observable at one sweep point.

    ``value`` is a float, or a 2D array whose columns are named by ``columns``.
    """

    kappa: float
    g1d: float
    band_index: object
    observable: str
    value: object = field(repr=False)
    columns: tuple = ()
    grid: tuple = ()


def _expand_range(start, stop, step):
    if step <= 0:
        raise ValueError("range step must be positive")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def _r(start, stop, step):
    return tuple(float(v) for v in _expand_range(start, stop, step))


_K_RANGE = _r(0.0, 5.0, 0.25)
_G_RANGE = _r(0.0, 10.0, 0.5)
_WAVE_SET = dict(n_points=MAP_N, spacing=MAP_H, kappa=(0.0, 1.0, 2.0, 5.0), g1d=(0.0, 1.0, 2.0, 5.0))

PRESETS = {
    "fig1": dict(kappa=_K_RANGE, g1d=(0.0,), observables=("spectrum",)),
    "fig2": dict(kappa=_K_RANGE, g1d=(0.0, 1.0, 2.0, 10.0), observables=("spectrum",)),
    "fig3": dict(_WAVE_SET, states=(0,), observables=("wavefunction",)),
    "fig4": dict(kappa=(0.0, 1.0, 2.0, 5.0), g1d=(0.0, 1.0, 2.0, 5.0), states=(0,), observables=("momentum",)),
    "fig5": dict(kappa=(0.0, 1.0, 2.0, 3.0, 4.0), g1d=_G_RANGE, states=(0,), observables=("entropy",)),
    "fig6": dict(kappa=_K_RANGE, g1d=(1.0, 2.0, 5.0, 10.0), states=(0,), observables=("entropy", "schmidt")),
    "fig7": dict(J=_r(0.1, 2.0, 0.1), U=_r(0.0, 10.0, 0.5), observables=("hubbard-surface",)),
    "fig8": dict(_WAVE_SET, states=(1, 2, 3), observables=("wavefunction",)),
    "fig9": dict(kappa=(0.0, 1.0, 2.0, 5.0), g1d=(0.0, 1.0, 2.0, 5.0), states=(2, 3), observables=("momentum",)),
    "fig10": dict(kappa=(0.0, 2.0, 4.0, 5.0), g1d=_G_RANGE, observables=("entropy",)),
    "fig11": dict(kappa=_K_RANGE, g1d=(1.0, 2.0, 5.0, 10.0), observables=("entropy",)),
    "fig12": dict(kappa=_K_RANGE, g1d=(1.0,), observables=("moments",)),
}


def preset_config(name, **overrides):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return replace(SweepConfig(preset=name, **PRESETS[name]), **overrides)


# --- config text -------------------------------------------------------------

def _parse_numbers(text, lineno, key):
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise ConfigError(f"empty list entry for {key}", lineno)
        try:
            if ":" in item:
                parts = [float(p) for p in item.split(":")]
                if len(parts) != 3:
                    raise ValueError
                out.extend(float(v) for v in _expand_range(*parts))
            else:
                out.append(float(item))
        except ValueError:
            raise ConfigError(f"malformed value {item!r} for {key}", lineno) from None
    if not all(np.isfinite(out)):
        raise ConfigError(f"non-finite value for {key}", lineno)
    return tuple(out)


def _parse_int(text, lineno, key):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {text!r}", lineno) from None


def parse_config(text):
    """Parse line-oriented ``key = value`` text into a validated SweepConfig.

    ``#`` starts a comment. Lists are comma separated; ``start:stop:step``
    expands to an inclusive range. A ``preset`` line seeds values that later
    keys in the same file override.
    """
    entries = {}
    preset = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if not value:
            raise ConfigError(f"missing value for {key}", lineno)
        if key in entries or (key == "preset" and preset is not None):
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if key == "preset":
            if value not in PRESETS:
                raise ConfigError(f"unknown preset {value!r}", lineno)
            preset = value
        else:
            entries[key] = (value, lineno)

    cfg = preset_config(preset) if preset else SweepConfig()
    updates = {}
    for key, (value, lineno) in entries.items():
        if key == "N":
            updates["n_points"] = _parse_int(value, lineno, key)
        elif key == "h":
            updates["spacing"] = _parse_numbers(value, lineno, key)[0]
        elif key in ("kappa", "g1d", "J", "U"):
            updates[key] = _parse_numbers(value, lineno, key)
        elif key == "eps":
            updates["eps"] = _parse_numbers(value, lineno, key)[0]
        elif key == "states":
            states = tuple(_parse_int(v.strip(), lineno, key) for v in value.split(","))
            if any(s not in (0, 1, 2, 3) for s in states):
                raise ConfigError("states must be band indices 0..3", lineno)
            updates["states"] = states
        elif key == "observables":
            obs = tuple(v.strip() for v in value.split(","))
            bad = [o for o in obs if o not in OBSERVABLES]
            if bad:
                raise ConfigError(f"unknown observable(s) {bad}", lineno)
            updates["observables"] = obs
        elif key == "kgrid":
            if value == "auto":
                updates["kgrid"] = None
            else:
                parts = value.split(":")
                try:
                    updates["kgrid"] = tuple(float(p) for p in parts)
                except ValueError:
                    parts = ()
                if len(parts) != 3:
                    raise ConfigError("kgrid must be 'auto' or start:stop:step", lineno)
    cfg = replace(cfg, **updates)
    validate_config(cfg, lines={k: ln for k, (_, ln) in entries.items()})
    return cfg


def validate_config(cfg, lines=None):
    lines = lines or {}
    try:
        check_grid_spec(cfg.n_points, cfg.spacing)
    except BosonPairError as exc:
        raise ConfigError(str(exc), lines.get("N", lines.get("h"))) from None
    for key in ("kappa", "g1d", "J", "U", "states", "observables"):
        if len(getattr(cfg, key)) == 0:
            raise ConfigError(f"{key} must be non-empty", lines.get(key))
    return cfg


def _fmt_list(values):
    return ", ".join(repr(float(v)) if isinstance(v, float) else str(v) for v in values)


def format_config(cfg):
    """Config text that :func:`parse_config` maps back to ``cfg``."""
    lines = [
        f"N = {cfg.n_points}",
        f"h = {cfg.spacing!r}",
        f"kappa = {_fmt_list(cfg.kappa)}",
        f"g1d = {_fmt_list(cfg.g1d)}",
        f"states = {_fmt_list(cfg.states)}",
        f"observables = {', '.join(cfg.observables)}",
        "kgrid = auto" if cfg.kgrid is None else "kgrid = " + ":".join(repr(float(v)) for v in cfg.kgrid),
        f"J = {_fmt_list(cfg.J)}",
        f"U = {_fmt_list(cfg.U)}",
        f"eps = {cfg.eps!r}",
    ]
    if cfg.preset:
        lines.insert(0, f"preset = {cfg.preset}")
    return "\n".join(lines) + "\n"


# --- computation ---------------------------------------------------------------

def _compute_point(cfg, kappa, g1d):
    """All requested observables at one (kappa, g1d) point."""
    grid = cfg.grid()
    spec = (grid.n_points, grid.spacing)
    rows = []
    if cfg.single_particle:
        states = solve_single(grid, kappa, SINGLE_LEVELS)
        for s in states:
            rows.append(ResultRow(kappa, g1d, s.index, "spectrum", s.energy, (s.parity,), spec))
        return rows

    band = lowest_band(grid, kappa, g1d)
    obs = set(cfg.observables)
    if "spectrum" in obs:
        for s in band:
            rows.append(ResultRow(kappa, g1d, s.band_index, "spectrum", s.energy, (s.exchange, s.parity), spec))
    if "moments" in obs:
        d02, q02 = transition_moments(band[0], band[2], grid)
        d03, q03 = transition_moments(band[0], band[3], grid)
        d01, q01 = transition_moments(band[0], band[1], grid)
        for name, value in (("dipole_02", d02), ("quadrupole_03", q03), ("dipole_03", d03),
                            ("quadrupole_02", q02), ("dipole_01", d01), ("quadrupole_01", q01)):
            rows.append(ResultRow(kappa, g1d, 0, "moments", value, (name,), spec))
    needs_rho = obs & {"rspdm", "momentum", "entropy", "schmidt"}
    for index in cfg.states:
        state = band[index]
        if "wavefunction" in obs:
            rows.append(ResultRow(kappa, g1d, index, "wavefunction", state.psi, ("x1", "x2", "psi"), spec))
        if not needs_rho:
            continue
        rho = rspdm(state, grid)
        decomp = natural_orbitals(rho, grid)
        if "rspdm" in obs:
            rows.append(ResultRow(kappa, g1d, index, "rspdm", rho.matrix, ("x", "xp", "rho"), spec))
        if "momentum" in obs:
            md = momentum_distribution(decomp, grid, cfg.k_values())
            rows.append(ResultRow(kappa, g1d, index, "momentum", np.column_stack([md.k, md.n]), ("k", "n"), spec))
        if "entropy" in obs:
            rows.append(ResultRow(kappa, g1d, index, "entropy", von_neumann_entropy(decomp), (), spec))
        if "schmidt" in obs:
            count = schmidt_number(decomp, SCHMIDT_THRESHOLD)
            rows.append(ResultRow(kappa, g1d, index, "schmidt", float(count), (), spec))
    return rows


def _safe_point(args):
    cfg, kappa, g1d = args
    try:
        return kappa, g1d, _compute_point(cfg, kappa, g1d), None
    except BosonPairError as exc:
        return kappa, g1d, [], f"{type(exc).__name__}: {exc}"


def compute_rows(cfg, workers=1):
    """Run every sweep point; returns ``(rows, failures)`` in canonical order."""
    jobs = [(cfg, k, g) for k, g in cfg.points()] if _needs_points(cfg) else []
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_safe_point, jobs))
    else:
        results = [_safe_point(job) for job in jobs]
    results.sort(key=lambda r: (r[0], r[1]))
    rows = [row for _, _, point_rows, _ in results for row in point_rows]
    failures = [dict(kappa=k, g1d=g, error=err) for k, g, _, err in results if err]
    if "hubbard-surface" in cfg.observables:
        rows.extend(_hubbard_rows(cfg))
    return rows, failures


def _needs_points(cfg):
    return cfg.single_particle or any(o != "hubbard-surface" for o in cfg.observables)


def _hubbard_rows(cfg):
    J = np.asarray(sorted(set(cfg.J)), dtype=float)
    U = np.asarray(sorted(set(cfg.U)), dtype=float)
    surface = entropy_surface(J, U, cfg.eps)
    table = np.array([[j, u, surface[a, b]] for a, j in enumerate(J) for b, u in enumerate(U)])
    return [ResultRow(np.nan, np.nan, None, "hubbard-surface", table, ("J", "U", "S"), ())]


# --- output --------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, str):
        return value
    return FLOAT_FMT.format(float(value))


def _header(cfg, observable, columns):
    lines = [f"# bosonpair {__version__}", f"# observable: {observable}"]
    if observable != "hubbard-surface":
        lines.append(f"# grid: N={cfg.n_points} h={cfg.spacing!r}")
    lines += ["# config:"] + [f"#   {line}" for line in format_config(cfg).splitlines()]
    lines.append(",".join(columns))
    return "\n".join(lines) + "\n"


def _table(rows, cfg, observable):
    """CSV text for one observable (long format, one line per value)."""
    out = io.StringIO()
    if observable == "spectrum":
        columns = ("kappa", "g1d", "level", "energy", "labels")
        out.write(_header(cfg, observable, columns))
        for r in rows:
            out.write(",".join([_fmt(r.kappa), _fmt(r.g1d), str(r.band_index), _fmt(r.value), "/".join(r.columns)]) + "\n")
    elif observable == "moments":
        columns = ("kappa", "g1d", "quantity", "value")
        out.write(_header(cfg, observable, columns))
        for r in rows:
            out.write(",".join([_fmt(r.kappa), _fmt(r.g1d), r.columns[0], _fmt(r.value)]) + "\n")
    elif observable in ("entropy", "schmidt"):
        columns = ("kappa", "g1d", "state", observable)
        out.write(_header(cfg, observable, columns))
        for r in rows:
            out.write(",".join([_fmt(r.kappa), _fmt(r.g1d), str(r.band_index), _fmt(r.value)]) + "\n")
    elif observable == "momentum":
        columns = ("kappa", "g1d", "state", "k", "n")
        out.write(_header(cfg, observable, columns))
        for r in rows:
            for k, n in r.value:
                out.write(",".join([_fmt(r.kappa), _fmt(r.g1d), str(r.band_index), _fmt(k), _fmt(n)]) + "\n")
    elif observable in ("wavefunction", "rspdm"):
        # column-major: first coordinate varies fastest
        columns = ("kappa", "g1d", "state") + tuple(rows[0].columns) if rows else ()
        out.write(_header(cfg, observable, columns))
        x = cfg.grid().points
        for r in rows:
            mat = np.asarray(r.value)
            for j in range(mat.shape[1]):
                for i in range(mat.shape[0]):
                    out.write(",".join([_fmt(r.kappa), _fmt(r.g1d), str(r.band_index),
                                        _fmt(x[i]), _fmt(x[j]), _fmt(mat[i, j])]) + "\n")
    elif observable == "hubbard-surface":
        columns = ("J", "U", "S")
        out.write(_header(cfg, observable, columns))
        for r in rows:
            for row in r.value:
                out.write(",".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def emit_gnuplot_data(rows, curve_key="kappa", x_key="g1d"):
    """Whitespace-separated, gnuplot-ready text for rows of one observable.

    Scalar rows are grouped into one block per ``(curve_key value, state)``
    (plus the quantity name for moments) and ordered by ``x_key``. Array rows
    become one block each, in ``(kappa, g1d, state)`` order. Blocks are
    separated by two blank lines; surface data has one blank line per scan row.
    """
    rows = list(rows)
    observables = {r.observable for r in rows}
    if len(observables) > 1:
        raise ValueError(f"emit_gnuplot_data needs a single observable, got {sorted(observables)}")
    if not rows:
        return ""
    observable = observables.pop()
    out = io.StringIO()
    out.write(f"# bosonpair {__version__}\n# observable: {observable}\n")

    def band(r):
        return -1 if r.band_index is None else r.band_index

    if observable == "hubbard-surface":
        for r in rows:
            out.write("# " + " ".join(r.columns) + "\n")
            table = np.asarray(r.value)
            for i, line in enumerate(table):
                if i and line[0] != table[i - 1, 0]:
                    out.write("\n")
                out.write(" ".join(_fmt(v) for v in line) + "\n")
        return out.getvalue()

    if isinstance(rows[0].value, np.ndarray):
        for r in sorted(rows, key=lambda r: (r.kappa, r.g1d, band(r))):
            out.write(f"# kappa={_fmt(r.kappa)} g1d={_fmt(r.g1d)} state={r.band_index}\n")
            out.write("# " + " ".join(r.columns) + "\n")
            mat = np.asarray(r.value)
            if r.observable in ("wavefunction", "rspdm"):
                n = mat.shape[0]
                for i in range(n):
                    for j in range(n):
                        out.write(f"{i} {j} {_fmt(mat[i, j])}\n")
                    out.write("\n")
            else:
                for line in mat:
                    out.write(" ".join(_fmt(v) for v in line) + "\n")
            out.write("\n\n")
        return out.getvalue()

    groups = {}
    for r in rows:
        quantity = r.columns[0] if observable == "moments" else ""
        groups.setdefault((quantity, getattr(r, curve_key), band(r)), []).append(r)
    for (quantity, curve, state), members in sorted(groups.items()):
        label = f"{quantity} " if quantity else ""
        out.write(f"# {label}{curve_key}={_fmt(curve)} state={state}\n# {x_key} value\n")
        for r in sorted(members, key=lambda r: getattr(r, x_key)):
            out.write(f"{_fmt(getattr(r, x_key))} {_fmt(r.value)}\n")
        out.write("\n\n")
    return out.getvalue()


def _digest(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run_sweep(cfg, out_dir, workers=1):
    """Compute a sweep and write one CSV and one gnuplot file per observable.

    Returns the manifest dict, which is also written to ``manifest.json``.
    Output files are byte-identical for equal configs regardless of
    ``workers``; only the manifest carries a timestamp.
    """
    os.makedirs(out_dir, exist_ok=True)
    rows, failures = compute_rows(cfg, workers)
    stem = cfg.preset or "sweep"
    files = []
    observables = ("spectrum",) if cfg.single_particle else cfg.observables
    for observable in observables:
        subset = [r for r in rows if r.observable == observable]
        outputs = [(f"{stem}_{observable}.csv", _table(subset, cfg, observable))]
        if observable in ("spectrum", "moments"):
            outputs.append((f"{stem}_{observable}.dat", emit_gnuplot_data(subset, "g1d", "kappa")))
        elif observable in ("entropy", "schmidt") and len(set(cfg.g1d)) < len(set(cfg.kappa)):
            outputs.append((f"{stem}_{observable}.dat", emit_gnuplot_data(subset, "g1d", "kappa")))
        else:
            outputs.append((f"{stem}_{observable}.dat", emit_gnuplot_data(subset)))
        for name, text in outputs:
            with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            files.append(dict(path=name, observable=observable, sha256=_digest(text), rows=len(subset)))
    manifest = dict(
        version=__version__,
        created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        config=format_config(cfg),
        grid=dict(N=cfg.n_points, h=cfg.spacing),
        points=[dict(kappa=k, g1d=g) for k, g in cfg.points()] if _needs_points(cfg) else [],
        files=files,
        failures=failures,
        partial=bool(failures),
    )
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
    log.info("wrote %d files to %s (%d failed points)", len(files), out_dir, len(failures))
    return manifest


def config_fields():
    return [f.name for f in fields(SweepConfig)]
