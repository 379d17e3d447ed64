"""Parameter sweeps over (T, ej, em, p) with deterministic CSV output.

A sweep evaluates LQU on a rectangular grid of one or two swept variables
with the rest held fixed.  Rows come out in row-major order of the
declared variables, and the rendered CSV is byte-stable: no timestamps,
floats printed as their shortest round-trip decimals.

Grid points are independent; with LQU_LAB_THREADS > 1 they are evaluated
by a thread pool whose map preserves order, so output bytes do not depend
on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .channels import CHANNEL_KINDS, ChannelSpec, apply_channel, lqu_closed_channel
from .lqu import lqu_bruteforce, lqu_closed_xstate, lqu_numeric, w_matrix
from .model import (
    TEMPERATURE_FLOOR,
    build_hamiltonian_x,
    check_temperature,
    gibbs_state_numeric,
    thermal_xstate,
)

SWEEPABLE = ("t", "ej", "em", "p")
METHODS = ("closed", "numeric", "bruteforce")

#: Default brute-force sphere resolution used by sweeps and the CLI
BRUTEFORCE_RESOLUTION = 4096

THREADS_ENV_VAR = "LQU_LAB_THREADS"


class InvalidSweepSpec(ValueError):
    """The sweep specification is malformed."""


@dataclass(frozen=True)
class SweepAxis:
    """One swept variable: `steps` points from `start` to `stop` inclusive."""

    name: str
    start: float
    stop: float
    steps: int
    spacing: str = "linear"

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """A full sweep: 1-2 axes, fixed values for the rest, channel, method."""

    axes: tuple[SweepAxis, ...]
    fixed: dict[str, float] = field(default_factory=dict)
    channel: str | None = None
    method: str = "closed"
    diagnostics: bool = False

    def validate(self) -> "SweepSpec":
        if not 1 <= len(self.axes) <= 2:
            raise InvalidSweepSpec("a sweep needs one or two axes")
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise InvalidSweepSpec("swept variables must be distinct")
        for ax in self.axes:
            if ax.name not in SWEEPABLE:
                raise InvalidSweepSpec(
                    f"unknown sweep variable {ax.name!r}, expected one of {SWEEPABLE}"
                )
            if not ax.start < ax.stop:
                raise InvalidSweepSpec(f"axis {ax.name}: need start < stop")
            if ax.steps < 2:
                raise InvalidSweepSpec(f"axis {ax.name}: need at least 2 steps")
            if ax.spacing not in ("linear", "log"):
                raise InvalidSweepSpec(f"axis {ax.name}: spacing must be linear or log")
            if ax.spacing == "log" and ax.start <= 0:
                raise InvalidSweepSpec(f"axis {ax.name}: log spacing requires start > 0")
        if self.method not in METHODS:
            raise InvalidSweepSpec(f"unknown method {self.method!r}")
        if self.channel is not None and self.channel not in CHANNEL_KINDS:
            raise InvalidSweepSpec(f"unknown channel {self.channel!r}")
        if self.diagnostics and self.method == "bruteforce":
            raise InvalidSweepSpec("diagnostics are not available for method=bruteforce")

        have = set(names) | set(self.fixed)
        need = {"t", "ej", "em"} | ({"p"} if self.channel else set())
        missing = need - have
        if missing:
            raise InvalidSweepSpec(f"missing values for: {', '.join(sorted(missing))}")
        if "p" in have and not self.channel:
            raise InvalidSweepSpec("p given but no channel selected")

        # temperature floor is a domain error, checked on the full range
        if "t" in self.fixed:
            check_temperature(self.fixed["t"])
        for ax in self.axes:
            if ax.name == "t":
                check_temperature(ax.start)
                check_temperature(ax.stop)
            if ax.name == "p" and not (0.0 <= ax.start and ax.stop <= 1.0):
                raise InvalidSweepSpec("p axis must stay within [0, 1]")
        if "p" in self.fixed and not 0.0 <= self.fixed["p"] <= 1.0:
            raise InvalidSweepSpec("fixed p must lie in [0, 1]")
        return self

    def columns(self) -> list[str]:
        cols = ["t", "ej", "em"]
        if self.channel:
            cols.append("p")
        cols.append("lqu")
        if self.diagnostics:
            cols += ["lambda1", "lambda2", "lambda3"]
        if self.method == "closed":
            cols.append("fallback")
        return cols

    def echo(self) -> str:
        """Canonical one-line description embedded in the CSV metadata."""
        parts = ["sweep"]
        for ax in self.axes:
            parts.append(f"{ax.name}={ax.start!r}:{ax.stop!r}:{ax.steps}:{ax.spacing}")
        for key in sorted(self.fixed):
            parts.append(f"{key}={self.fixed[key]!r}")
        if self.channel:
            parts.append(f"channel={self.channel}")
        parts.append(f"method={self.method}")
        parts.append(f"diagnostics={int(self.diagnostics)}")
        return " ".join(parts)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def to_csv(self) -> str:
        return render_csv(self.spec.echo(), self.columns, self.rows)


def render_csv(echo: str, columns, rows) -> str:
    """Byte-stable CSV: '#' metadata block, lowercase header, LF endings.

    Floats are rendered as shortest round-trip decimals; the fallback
    flag column as a bare 0/1.
    """
    lines = [f"# lqu-lab {__version__}", f"# {echo}"]
    lines.append(",".join(columns))
    flags = {i for i, c in enumerate(columns) if c == "fallback"}
    for row in rows:
        lines.append(
            ",".join(
                str(int(v)) if i in flags else repr(float(v))
                for i, v in enumerate(row)
            )
        )
    return "\n".join(lines) + "\n"


def evaluate_point(
    t: float,
    ej: float,
    em: float,
    channel: str | None = None,
    p: float | None = None,
    method: str = "closed",
    diagnostics: bool = False,
    resolution: int = BRUTEFORCE_RESOLUTION,
) -> dict[str, float]:
    """One grid-point evaluation shared by the CLI and the sweep engine.

    Returns a dict with 'lqu' plus, when requested, 'lambda1'..'lambda3'
    and 'fallback'.
    """
    t = check_temperature(t)
    spec = ChannelSpec(channel, p) if channel else None

    if method == "closed":
        x = thermal_xstate(ej, em, t)
        diag = lqu_closed_channel(x, spec) if spec is not None else lqu_closed_xstate(x)
        out = {"lqu": diag.lqu, "fallback": float(diag.fallback)}
        if diagnostics:
            out.update(
                lambda1=diag.lambda1, lambda2=diag.lambda2, lambda3=diag.lambda3
            )
        return out

    rho = gibbs_state_numeric(build_hamiltonian_x(ej, ej, em), t)
    if spec is not None:
        rho = apply_channel(rho, spec, spec)
    if method == "numeric":
        out = {"lqu": lqu_numeric(rho)}
        if diagnostics:
            w = w_matrix(rho)
            out.update(lambda1=float(w[0, 0]), lambda2=float(w[1, 1]), lambda3=float(w[2, 2]))
        return out
    if method == "bruteforce":
        return {"lqu": lqu_bruteforce(rho, resolution)}
    raise InvalidSweepSpec(f"unknown method {method!r}")


def resolve_workers(override: int | None = None) -> int:
    """Worker count: explicit override, else LQU_LAB_THREADS, else 1."""
    if override is not None:
        return max(1, int(override))
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        workers = int(raw)
        if workers < 1:
            raise ValueError
    except ValueError:
        raise InvalidSweepSpec(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
        ) from None
    return workers


def run_sweep(spec: SweepSpec, max_workers: int | None = None) -> SweepResult:
    """Evaluate the sweep grid; rows in row-major order of the declared axes."""
    spec.validate()
    grids = [ax.grid() for ax in spec.axes]
    names = [ax.name for ax in spec.axes]

    points: list[dict[str, float]] = []
    if len(grids) == 1:
        for v in grids[0]:
            points.append({names[0]: float(v)})
    else:
        for v0 in grids[0]:
            for v1 in grids[1]:
                points.append({names[0]: float(v0), names[1]: float(v1)})

    cols = spec.columns()

    def eval_one(pt: dict[str, float]) -> tuple[float, ...]:
        params = dict(spec.fixed)
        params.update(pt)
        res = evaluate_point(
            t=params["t"],
            ej=params["ej"],
            em=params["em"],
            channel=spec.channel,
            p=params.get("p"),
            method=spec.method,
            diagnostics=spec.diagnostics,
        )
        values = {**params, **res}
        return tuple(float(values[c]) for c in cols)

    workers = resolve_workers(max_workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = tuple(ex.map(eval_one, points))
    else:
        rows = tuple(eval_one(pt) for pt in points)
    return SweepResult(spec=spec, columns=tuple(cols), rows=rows)
