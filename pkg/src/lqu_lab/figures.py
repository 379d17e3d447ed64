"""Figure presets: the data grids behind the standard plots, as CSV files.

Each preset id maps to one or more CSV files written into an output
directory.  Fixed parameter values follow the plot captions; where a
caption leaves a range open the preset uses the documented default
(energy axes [0, 10] for the 1-D presets, [0, 5] for the decoherence
surfaces, temperature axes [0.01, 1]) and records the choice in the CSV
metadata.  Output is byte-stable across runs and worker counts.
"""

from __future__ import annotations

import os

import numpy as np

from .sweep import evaluate_point, render_csv

#: 1-D presets use this many points per axis
LINE_POINTS = 201

#: Surface presets use this grid per axis
SURFACE_POINTS = 101

#: Max-over-energy presets scan this grid (step 0.01 over [0, 10])
MAX_SCAN_POINTS = 1001

#: Temperature grid for the max-over-energy preset: step 0.005 hits 0.05
MAX_SCAN_T_POINTS = 199

T_RANGE = (0.01, 1.0)
ENERGY_RANGE = (0.0, 10.0)
SURFACE_ENERGY_RANGE = (0.0, 5.0)
FIG2_TEMPERATURES = (0.05, 0.1, 0.5, 1.0)


class UnknownFigureId(ValueError):
    """The figure id is not one of FIGURE_IDS."""


def _curves_vs_t(fixed_name, fixed_value, curve_name, curve_values):
    """LQU(T) for a few values of one energy, the other held fixed."""
    ts = np.linspace(*T_RANGE, LINE_POINTS)
    rows = []
    for cv in curve_values:
        params = {fixed_name: fixed_value, curve_name: cv}
        for t in ts:
            res = evaluate_point(t=float(t), ej=params["ej"], em=params["em"])
            rows.append((float(t), params["ej"], params["em"], res["lqu"], res["fallback"]))
    cols = ("t", "ej", "em", "lqu", "fallback")
    echo = (
        f"{fixed_name}={fixed_value!r} {curve_name} in {list(curve_values)!r} "
        f"t={T_RANGE[0]!r}:{T_RANGE[1]!r}:{LINE_POINTS}"
    )
    return cols, rows, echo


def _curves_vs_energy(sweep_name, fixed_name, fixed_value):
    """LQU(energy) at the four standard temperatures."""
    es = np.linspace(*ENERGY_RANGE, LINE_POINTS)
    rows = []
    for t in FIG2_TEMPERATURES:
        for e in es:
            params = {sweep_name: float(e), fixed_name: fixed_value}
            res = evaluate_point(t=t, ej=params["ej"], em=params["em"])
            rows.append((t, params["ej"], params["em"], res["lqu"], res["fallback"]))
    cols = ("t", "ej", "em", "lqu", "fallback")
    echo = (
        f"{fixed_name}={fixed_value!r} t in {list(FIG2_TEMPERATURES)!r} "
        f"{sweep_name}={ENERGY_RANGE[0]!r}:{ENERGY_RANGE[1]!r}:{LINE_POINTS}"
    )
    return cols, rows, echo


def _max_over_energy(sweep_name, fixed_name, fixed_value):
    """Per temperature: max LQU over one energy, the other fixed.

    The swept-energy column holds the location of the inner maximum (grid
    resolution 0.01); the lqu column holds the maximum itself.
    """
    ts = np.linspace(*T_RANGE, MAX_SCAN_T_POINTS)
    es = np.linspace(*ENERGY_RANGE, MAX_SCAN_POINTS)
    rows = []
    for t in ts:
        best_v, best_e = -1.0, 0.0
        for e in es:
            params = {sweep_name: float(e), fixed_name: fixed_value}
            v = evaluate_point(t=float(t), ej=params["ej"], em=params["em"])["lqu"]
            if v > best_v:
                best_v, best_e = v, float(e)
        params = {sweep_name: best_e, fixed_name: fixed_value}
        rows.append((float(t), params["ej"], params["em"], best_v))
    cols = ("t", "ej", "em", "lqu")
    echo = (
        f"max over {sweep_name}={ENERGY_RANGE[0]!r}:{ENERGY_RANGE[1]!r}:{MAX_SCAN_POINTS} "
        f"at {fixed_name}={fixed_value!r}; {sweep_name} column holds the argmax"
    )
    return cols, rows, echo


def _lambda_curves(ej, em):
    """T dependence of lambda1, lambda3 (and the LQU kink between them)."""
    ts = np.linspace(*T_RANGE, LINE_POINTS)
    rows = []
    for t in ts:
        res = evaluate_point(t=float(t), ej=ej, em=em, diagnostics=True)
        rows.append(
            (float(t), ej, em, res["lqu"], res["lambda1"], res["lambda2"],
             res["lambda3"], res["fallback"])
        )
    cols = ("t", "ej", "em", "lqu", "lambda1", "lambda2", "lambda3", "fallback")
    echo = f"ej={ej!r} em={em!r} t={T_RANGE[0]!r}:{T_RANGE[1]!r}:{LINE_POINTS} diagnostics=1"
    return cols, rows, echo


def _surface_p_t(channel):
    ps = np.linspace(0.0, 1.0, SURFACE_POINTS)
    ts = np.linspace(*T_RANGE, SURFACE_POINTS)
    rows = [
        (float(t), 1.0, 1.0, float(p),) + _chan_point(1.0, 1.0, float(t), channel, float(p))
        for p in ps
        for t in ts
    ]
    cols = ("t", "ej", "em", "p", "lqu", "fallback")
    echo = (
        f"channel={channel} ej=1.0 em=1.0 p=0.0:1.0:{SURFACE_POINTS} "
        f"t={T_RANGE[0]!r}:{T_RANGE[1]!r}:{SURFACE_POINTS}"
    )
    return cols, rows, echo


def _surface_p_energy(channel, sweep_name):
    fixed = {"ej": 1.0} if sweep_name == "em" else {"em": 1.0}
    ps = np.linspace(0.0, 1.0, SURFACE_POINTS)
    es = np.linspace(*SURFACE_ENERGY_RANGE, SURFACE_POINTS)
    rows = []
    for p in ps:
        for e in es:
            params = dict(fixed)
            params[sweep_name] = float(e)
            rows.append(
                (0.05, params["ej"], params["em"], float(p))
                + _chan_point(params["ej"], params["em"], 0.05, channel, float(p))
            )
    cols = ("t", "ej", "em", "p", "lqu", "fallback")
    fixed_name, fixed_value = next(iter(fixed.items()))
    echo = (
        f"channel={channel} t=0.05 {fixed_name}={fixed_value!r} p=0.0:1.0:{SURFACE_POINTS} "
        f"{sweep_name}={SURFACE_ENERGY_RANGE[0]!r}:{SURFACE_ENERGY_RANGE[1]!r}:{SURFACE_POINTS}"
    )
    return cols, rows, echo


def _curve_vs_p(channel, t):
    ps = np.linspace(0.0, 1.0, LINE_POINTS)
    rows = [
        (t, 1.0, 1.0, float(p)) + _chan_point(1.0, 1.0, t, channel, float(p))
        for p in ps
    ]
    cols = ("t", "ej", "em", "p", "lqu", "fallback")
    echo = f"channel={channel} t={t!r} ej=1.0 em=1.0 p=0.0:1.0:{LINE_POINTS}"
    return cols, rows, echo


def _chan_point(ej, em, t, channel, p):
    res = evaluate_point(t=t, ej=ej, em=em, channel=channel, p=p)
    return (res["lqu"], res["fallback"])


def _build(fig_id):
    """Return a list of (file stem, columns, rows, echo) for the preset."""
    if fig_id == "fig1a":
        return [(fig_id, *_curves_vs_t("em", 1.0, "ej", (0.5, 1.0, 2.0)))]
    if fig_id == "fig1b":
        return [(fig_id, *_curves_vs_t("ej", 1.0, "em", (0.5, 1.0, 2.0)))]
    if fig_id == "fig2a":
        return [(fig_id, *_curves_vs_energy("ej", "em", 1.0))]
    if fig_id == "fig2b":
        return [(fig_id, *_curves_vs_energy("em", "ej", 1.0))]
    if fig_id == "fig3":
        return [
            (fig_id + "_red", *_max_over_energy("ej", "em", 5.0)),
            (fig_id + "_blue", *_max_over_energy("em", "ej", 1.5)),
        ]
    if fig_id == "fig4a":
        return [(fig_id, *_lambda_curves(0.5, 1.0))]
    if fig_id == "fig4b":
        return [(fig_id, *_lambda_curves(2.0, 1.0))]
    if fig_id == "fig5a":
        return [(fig_id, *_lambda_curves(1.0, 0.5))]
    if fig_id == "fig5b":
        return [(fig_id, *_lambda_curves(1.0, 2.0))]
    if fig_id in ("fig6a", "fig6b", "fig6c"):
        channel = {"a": "ad", "b": "pf", "c": "pd"}[fig_id[-1]]
        return [(fig_id, *_surface_p_t(channel))]
    if fig_id in ("fig7a", "fig7b", "fig7c"):
        channel = {"a": "ad", "b": "pf", "c": "pd"}[fig_id[-1]]
        return [(fig_id, *_surface_p_energy(channel, "em"))]
    if fig_id in ("fig8a", "fig8b", "fig8c"):
        channel = {"a": "ad", "b": "pf", "c": "pd"}[fig_id[-1]]
        return [(fig_id, *_surface_p_energy(channel, "ej"))]
    if fig_id == "fig9a":
        return [(f"{fig_id}_{ch}", *_curve_vs_p(ch, 0.05)) for ch in ("ad", "pf", "pd")]
    if fig_id == "fig9b":
        return [(f"{fig_id}_{ch}", *_curve_vs_p(ch, 1.0)) for ch in ("ad", "pf", "pd")]
    raise UnknownFigureId(f"unknown figure id {fig_id!r}")


FIGURE_IDS = (
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3",
    "fig4a", "fig4b", "fig5a", "fig5b",
    "fig6a", "fig6b", "fig6c",
    "fig7a", "fig7b", "fig7c",
    "fig8a", "fig8b", "fig8c",
    "fig9a", "fig9b",
)


def figure_csvs(fig_id: str) -> dict[str, str]:
    """Render the preset to {filename: csv text} without touching disk."""
    if fig_id not in FIGURE_IDS:
        raise UnknownFigureId(f"unknown figure id {fig_id!r}")
    return {
        f"{stem}.csv": render_csv(f"figure {fig_id}: {echo}", cols, rows)
        for stem, cols, rows, echo in _build(fig_id)
    }


def run_figure(fig_id: str, out_dir: str) -> list[str]:
    """Write the preset CSV file(s) into out_dir; returns the paths written."""
    files = figure_csvs(fig_id)
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name in sorted(files):
        path = os.path.join(out_dir, name)
        with open(path, "w", newline="") as fh:
            fh.write(files[name])
        paths.append(path)
    return paths
