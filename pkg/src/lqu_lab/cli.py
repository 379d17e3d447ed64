"""Command-line front end: point, sweep, figure, selftest.

Exit codes: 0 success, 1 usage error, 2 numerical-domain error (e.g. a
temperature below the supported floor), 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .figures import FIGURE_IDS, UnknownFigureId, run_figure
from .model import TemperatureOutOfRange
from .selftest import run_selftest
from .sweep import (
    BRUTEFORCE_RESOLUTION,
    InvalidSweepSpec,
    SweepAxis,
    SweepSpec,
    evaluate_point,
    resolve_workers,
    run_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_IO = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the CLI contract wants 1
    def error(self, message):
        raise UsageError(message)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ej", type=float, help="Josephson energy")
    p.add_argument("--em", type=float, help="mutual coupling energy")
    p.add_argument("--T", dest="t", type=float, help="temperature (k_B = 1)")
    p.add_argument("--channel", choices=["ad", "pf", "pd"], help="decoherence channel")
    p.add_argument("--p", dest="p", type=float, help="decoherence parameter in [0, 1]")
    p.add_argument(
        "--method",
        choices=["closed", "numeric", "bruteforce"],
        default=None,
        help="evaluation method (default: closed)",
    )
    p.add_argument("--diagnostics", action="store_true", default=None,
                   help="emit lambda1..lambda3 columns")
    p.add_argument("--config", help="flat key=value file; CLI flags override it")


def _build_parser() -> _Parser:
    parser = _Parser(prog="lqu-lab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lqu-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one parameter point")
    _common_flags(p_point)

    p_sweep = sub.add_parser("sweep", help="1-D or 2-D parameter sweep to CSV")
    _common_flags(p_sweep)
    p_sweep.add_argument(
        "--var",
        action="append",
        metavar="NAME=FROM:TO:STEPS[:SPACING]",
        help="swept variable (one of T, ej, em, p); repeat for a 2-D sweep",
    )
    p_sweep.add_argument("--out", help="output CSV path (default: stdout)")

    p_fig = sub.add_parser("figure", help="write a figure preset's data CSV(s)")
    p_fig.add_argument("id", help=f"one of: {', '.join(FIGURE_IDS)}")
    p_fig.add_argument("--out", default=".", help="output directory (default: .)")

    sub.add_parser("selftest", help="run the deterministic invariant suite")
    return parser


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = {
    "t": ("t", float),
    "T": ("t", float),
    "ej": ("ej", float),
    "em": ("em", float),
    "p": ("p", float),
    "channel": ("channel", str),
    "method": ("method", str),
    "diagnostics": ("diagnostics", lambda s: s.lower() in ("1", "true", "yes", "on")),
    "out": ("out", str),
    "var": ("var", str),
    "var2": ("var2", str),
}


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset args from the config file; explicit flags win."""
    if not getattr(args, "config", None):
        return
    for key, raw in _load_config(args.config).items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        dest, conv = _CONFIG_KEYS[key]
        try:
            value = conv(raw)
        except ValueError:
            raise UsageError(f"config key {key!r}: cannot parse {raw!r}") from None
        if dest in ("var", "var2"):
            current = getattr(args, "var", None)
            if dest == "var" and not current:
                args.var = [value]
            elif dest == "var2":
                args.var = (getattr(args, "var", None) or []) + [value]
            continue
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)


def _parse_axis(text: str) -> SweepAxis:
    if "=" not in text:
        raise UsageError(f"--var needs NAME=FROM:TO:STEPS[:SPACING], got {text!r}")
    name, spec = text.split("=", 1)
    name = name.strip()
    if name == "T":
        name = "t"
    parts = spec.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"--var needs FROM:TO:STEPS[:SPACING], got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise UsageError(f"cannot parse --var values in {text!r}") from None
    spacing = parts[3] if len(parts) == 4 else "linear"
    return SweepAxis(name=name, start=start, stop=stop, steps=steps, spacing=spacing)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--T" if n == "t" else f"--{n}" for n in missing)
        raise UsageError(f"missing required value(s): {flags}")


def _cmd_point(args: argparse.Namespace) -> int:
    _apply_config(args)
    _require(args, "t", "ej", "em")
    if args.channel is not None:
        _require(args, "p")
    elif args.p is not None:
        raise UsageError("--p given but no --channel selected")
    method = args.method or "closed"
    diagnostics = bool(args.diagnostics)
    if diagnostics and method == "bruteforce":
        raise UsageError("--diagnostics is not available with --method bruteforce")
    res = evaluate_point(
        t=args.t,
        ej=args.ej,
        em=args.em,
        channel=args.channel,
        p=args.p,
        method=method,
        diagnostics=diagnostics,
        resolution=BRUTEFORCE_RESOLUTION,
    )
    print(f"lqu={res['lqu']!r}")
    if diagnostics:
        for key in ("lambda1", "lambda2", "lambda3"):
            print(f"{key}={res[key]!r}")
    if "fallback" in res:
        print(f"fallback={int(res['fallback'])}")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    _apply_config(args)
    if not args.var:
        raise UsageError("sweep needs at least one --var")
    axes = tuple(_parse_axis(v) for v in args.var)
    swept = {ax.name for ax in axes}
    fixed = {}
    for name in ("t", "ej", "em", "p"):
        value = getattr(args, name, None)
        if name not in swept and value is not None:
            fixed[name] = value
    spec = SweepSpec(
        axes=axes,
        fixed=fixed,
        channel=args.channel,
        method=args.method or "closed",
        diagnostics=bool(args.diagnostics),
    )
    result = run_sweep(spec, max_workers=None)
    text = result.to_csv()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_figure(args: argparse.Namespace) -> int:
    paths = run_figure(args.id, args.out)
    for path in paths:
        print(path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        resolve_workers(None)  # validate LQU_LAB_THREADS early
        if args.command == "point":
            return _cmd_point(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "figure":
            return _cmd_figure(args)
        return run_selftest()
    except (UsageError, UnknownFigureId, InvalidSweepSpec) as exc:
        print(f"lqu-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TemperatureOutOfRange as exc:
        print(f"lqu-lab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # numeric-domain violations from the library (p out of range, ...)
        print(f"lqu-lab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"lqu-lab: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
