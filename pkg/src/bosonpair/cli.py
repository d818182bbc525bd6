"""Command-line entry point: ``bosonpair <subcommand> [options]``.

Exit codes: 0 success, 1 some sweep points failed (see manifest), 2 bad configuration.
"""

import argparse
import logging
import sys
from dataclasses import replace

from . import __version__
from .exceptions import BosonPairError, ConfigError
from .oracle import write_fixtures
from .scaling import OLSHANII_C, PhysicalParams, g1d_from_3d, to_scaled
from .sweep import PRESETS, SweepConfig, _parse_numbers, parse_config, preset_config, run_sweep, validate_config

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2

SWEEP_COMMANDS = {
    "spectrum": ("spectrum",),
    "wavefunction": ("wavefunction",),
    "momentum": ("momentum",),
    "entropy": ("entropy", "schmidt"),
    "moments": ("moments",),
    "hubbard": ("hubbard-surface",),
}


def _grid_arg(text):
    try:
        n, h = text.split(",")
        return int(n), float(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--grid expects N,h, got {text!r}") from None


def _common(parser):
    parser.add_argument("--config", metavar="PATH", help="key = value configuration file")
    parser.add_argument("--out", metavar="DIR", default="out", help="output directory (default: out)")
    parser.add_argument("--workers", type=int, default=1, metavar="INT", help="parallel worker processes")
    parser.add_argument("--grid", type=_grid_arg, metavar="N,h", help="override the DVR grid")


def build_parser():
    parser = argparse.ArgumentParser(prog="bosonpair", description="Two bosons in a 1D double well: spectra, correlations, figure data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in SWEEP_COMMANDS:
        p = sub.add_parser(name, help=f"{name} sweep over the configured points")
        _common(p)
        if name == "hubbard":
            p.add_argument("--J", help="hopping values (list or start:stop:step)")
            p.add_argument("--U", help="interaction values (list or start:stop:step)")
            p.add_argument("--eps", type=float, help="on-site energy")
        else:
            p.add_argument("--kappa", help="barrier values (list or start:stop:step)")
            p.add_argument("--g1d", help="interaction values (list or start:stop:step)")
            p.add_argument("--states", help="band indices, e.g. 0,2")

    p = sub.add_parser("reproduce", help="regenerate the data behind one figure")
    p.add_argument("preset", choices=sorted(PRESETS, key=lambda s: int(s[3:])))
    _common(p)

    p = sub.add_parser("oracle", help="regenerate the finite-difference reference fixtures")
    _common(p)
    p.set_defaults(out="tests/fixtures")

    p = sub.add_parser("scale", help="convert physical parameters to scaled units")
    p.add_argument("--mass", type=float, required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--kappa", type=float, default=0.0)
    p.add_argument("--g1d", type=float, help="physical 1D coupling")
    p.add_argument("--a3d", type=float, help="3D scattering length (needs --d-perp)")
    p.add_argument("--d-perp", type=float)
    p.add_argument("--olshanii-c", type=float, default=OLSHANII_C, help=f"resonance constant (default {OLSHANII_C})")
    return parser


def _load_config(args, preset=None):
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read {args.config}: {exc}") from None
        if preset:
            # keys in the file override the preset
            text = f"preset = {preset}\n" + "\n".join(
                "" if line.split("=", 1)[0].strip() == "preset" else line for line in text.splitlines()
            )
        cfg = parse_config(text)
    else:
        cfg = preset_config(preset) if preset else SweepConfig()
    if args.grid:
        cfg = replace(cfg, n_points=args.grid[0], spacing=args.grid[1])
    return cfg


def _apply_overrides(cfg, args):
    updates = {}
    for key in ("kappa", "g1d", "J", "U"):
        value = getattr(args, key, None)
        if value is not None:
            updates[key] = _parse_numbers(value, None, key)
    if getattr(args, "eps", None) is not None:
        updates["eps"] = args.eps
    if getattr(args, "states", None):
        states = tuple(int(s) for s in _parse_numbers(args.states, None, "states"))
        if any(s not in (0, 1, 2, 3) for s in states):
            raise ConfigError("states must be band indices 0..3")
        updates["states"] = states
    return replace(cfg, **updates)


def _run(cfg, args):
    if args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    validate_config(cfg)
    manifest = run_sweep(cfg, args.out, args.workers)
    for entry in manifest["files"]:
        print(f"{args.out}/{entry['path']}  {entry['sha256'][:16]}")
    for failure in manifest["failures"]:
        print(f"FAILED kappa={failure['kappa']} g1d={failure['g1d']}: {failure['error']}", file=sys.stderr)
    return EXIT_PARTIAL if manifest["partial"] else EXIT_OK


def _scale(args):
    p = PhysicalParams(args.mass, args.hbar, args.A, args.kappa, args.g1d or 0.0)
    g1d = args.g1d
    if args.a3d is not None:
        if args.d_perp is None:
            raise ConfigError("--a3d needs --d-perp")
        g1d = g1d_from_3d(args.a3d, args.d_perp, args.mass, args.hbar, args.olshanii_c)
        p = replace(p, g1d=g1d)
    s = to_scaled(p)
    print(f"alpha = {s.alpha!r}\nkappa = {s.kappa!r}\ng1d = {s.g1d!r}")
    if g1d is not None:
        print(f"g1d_physical = {g1d!r}")
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "scale":
            return _scale(args)
        if args.command == "oracle":
            for path in write_fixtures(args.out):
                print(path)
            return EXIT_OK
        if args.command == "reproduce":
            return _run(_load_config(args, args.preset), args)
        cfg = _apply_overrides(_load_config(args), args)
        return _run(replace(cfg, observables=SWEEP_COMMANDS[args.command]), args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BosonPairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
