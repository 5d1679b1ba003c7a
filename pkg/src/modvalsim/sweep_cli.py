"""Command-line front end: figure data, parameter sweeps, errata, self-checks.

Verbs:

* ``figure fig1..fig9`` writes the long-format CSV behind each bundled figure
  panel (parameters pinned in ``FIGURES`` below, overridable via flags),
* ``sweep`` evaluates one quantity over the Cartesian product of swept
  parameters,
* ``errata`` writes the report of discrepancies between the printed reference
  closed forms and the numeric pipeline,
* ``check`` runs the analytic-vs-oracle equivalence suite.

Every CSV row echoes the full parameter set, so any row can be reproduced in
isolation, and all numbers are serialized with 17 significant digits so two
runs of the same command are byte-identical.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .measurement_engine import (
    MeasurementConfig,
    equivalence_deviations,
    final_pointer_analytic,
)
from .observables import (
    QuadratureSpec,
    SnrInput,
    closed_form_check,
    mandel_q,
    number_distribution,
    quadrature_mean,
    quadrature_second_moment,
    snr,
)
from .pointer_states import DEFAULT_DIM, Cat, Coherent, PointerSpec, Squeezed, build_pointer
from .qubit_system import SelectionConfig, modular_value, selection_for_modular_value

CSV_HEADER = ("quantity,family,n,alpha_re,alpha_im,gamma,phi,r,theta_sq,phi_cat,"
              "g,theta1,phi1,modval_re,modval_im,m,dim,quad_theta,n_total,"
              "snr_mode,ps_convention,ps_exact,ps_paper,truncation_leak,value")
_COLUMNS = CSV_HEADER.split(",")

QUANTITIES = ("p_n", "mandel_q", "snr", "quad_mean", "quad_second")

#: Parameters a sweep may range over.
SWEEPABLE = {"gamma", "phi", "alpha_re", "alpha_im", "r", "theta_sq", "phi_cat",
             "g", "theta1", "phi1", "modval", "m", "dim", "quad_theta", "n", "n_total"}
_INT_PARAMS = {"m", "dim", "n", "n_total"}

_SWEEP_DEFAULTS = {
    "gamma": 2.0, "phi": 0.0,
    "alpha_re": 1.0, "alpha_im": 0.0, "r": 0.5, "theta_sq": 0.0,
    "phi_cat": 0.0,
    "g": math.pi / 2, "theta1": math.pi / 4, "phi1": math.pi / 2,
    "m": 2, "dim": DEFAULT_DIM, "quad_theta": 0.0, "n_total": 1, "n": 2,
}


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a quantity, a pointer family, fixed parameters, swept axes."""

    quantity: str
    family: str
    fixed: dict
    sweeps: tuple  # ordered ((name, (values...)), ...); empty means a single point
    snr_mode: str = "shift"
    ps_convention: str = "paper"
    out_path: Optional[Path] = None


def _pointer_spec(family: str, p: dict) -> PointerSpec:
    if family == "coherent":
        return Coherent(gamma=p["gamma"], phi=p["phi"])
    if family == "squeezed":
        return Squeezed(alpha=complex(p["alpha_re"], p["alpha_im"]),
                        r=p["r"], theta_sq=p["theta_sq"])
    if family == "cat":
        return Cat(alpha=complex(p["alpha_re"], p["alpha_im"]), phi_cat=p["phi_cat"])
    raise ValueError(f"unknown pointer family {family!r}")


def _selection(p: dict) -> SelectionConfig:
    if p.get("modval") is not None:
        return selection_for_modular_value(p["modval"])
    return SelectionConfig(theta1=p["theta1"], phi1=p["phi1"], g=p["g"])


def evaluate_point(family: str, quantity: str, params: dict,
                   snr_mode: str = "shift", ps_convention: str = "paper") -> dict:
    """Run the full pipeline at one parameter point and return a CSV row dict."""
    p = dict(_SWEEP_DEFAULTS)
    p.update({k: v for k, v in params.items() if v is not None})
    for key in _INT_PARAMS:
        p[key] = int(p[key])
    if p["dim"] < p["m"] + 3:
        raise ValueError(f"dim={p['dim']} too small for projector level m={p['m']} "
                         f"(need dim >= m + 3)")
    sel = _selection({**p, "modval": params.get("modval")})
    spec = _pointer_spec(family, p)
    cfg = MeasurementConfig(sel=sel, pointer=spec, m=p["m"], dim=p["dim"])
    initial = build_pointer(spec, p["dim"])
    final = final_pointer_analytic(cfg)
    mv = modular_value(sel)

    quad = QuadratureSpec(theta=p["quad_theta"])
    is_snr = quantity == "snr"
    is_quad = quantity in ("snr", "quad_mean", "quad_second")
    if quantity == "p_n":
        level = p["n"]
        if not 0 <= level < p["dim"]:
            raise ValueError(f"photon number n={level} outside the truncated basis")
        value = float(number_distribution(final)[level])
    elif quantity == "mandel_q":
        value = mandel_q(final)
    elif quantity == "quad_mean":
        value = quadrature_mean(final, quad)
    elif quantity == "quad_second":
        value = quadrature_second_moment(final, quad)
    elif quantity == "snr":
        ps = final.ps_paper if ps_convention == "paper" else final.ps_exact
        value = snr(final, initial, quad,
                    SnrInput(n_total=p["n_total"], ps=ps, signal_mode=snr_mode))
    else:
        raise ValueError(f"unknown quantity {quantity!r}")

    alpha = {"coherent": Coherent(p["gamma"], p["phi"]).alpha,
             "squeezed": complex(p["alpha_re"], p["alpha_im"]),
             "cat": complex(p["alpha_re"], p["alpha_im"])}[family]
    row = {col: "" for col in _COLUMNS}
    row.update({
        "quantity": quantity, "family": family,
        "alpha_re": alpha.real, "alpha_im": alpha.imag,
        "g": sel.g, "theta1": sel.theta1, "phi1": sel.phi1,
        "modval_re": mv.real, "modval_im": mv.imag,
        "m": p["m"], "dim": p["dim"],
        "ps_exact": final.ps_exact, "ps_paper": final.ps_paper,
        "truncation_leak": initial.truncation_leak,
        "value": value,
    })
    if family == "coherent":
        row["gamma"], row["phi"] = p["gamma"], p["phi"]
    elif family == "squeezed":
        row["r"], row["theta_sq"] = p["r"], p["theta_sq"]
    else:
        row["phi_cat"] = p["phi_cat"]
    if quantity == "p_n":
        row["n"] = p["n"]
    if is_quad:
        row["quad_theta"] = p["quad_theta"]
    if is_snr:
        row["n_total"] = p["n_total"]
        row["snr_mode"] = snr_mode
        row["ps_convention"] = ps_convention
    return row


def evaluate_row(row: dict) -> float:
    """Recompute the value of a parsed CSV row from its own columns only."""
    params = {}
    for key in ("gamma", "phi", "alpha_re", "alpha_im", "r", "theta_sq", "phi_cat",
                "g", "theta1", "phi1", "quad_theta"):
        if row.get(key, "") != "":
            params[key] = float(row[key])
    for key in ("m", "dim", "n", "n_total"):
        if row.get(key, "") != "":
            params[key] = int(row[key])
    fresh = evaluate_point(row["family"], row["quantity"], params,
                           snr_mode=row.get("snr_mode") or "shift",
                           ps_convention=row.get("ps_convention") or "paper")
    return float(fresh["value"])


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def rows_to_csv(rows: Sequence[dict]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(_fmt(row[col]) for col in _COLUMNS))
    return "\n".join(lines) + "\n"


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Evaluate the Cartesian product of the swept parameters, in input order."""
    for name, values in spec.sweeps:
        if name not in SWEEPABLE:
            raise ValueError(f"parameter {name!r} cannot be swept")
        if len(values) < 1:
            raise ValueError(f"sweep over {name!r} has no values")
    if spec.quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {spec.quantity!r}")

    rows = []
    grids = [values for _, values in spec.sweeps]
    names = [name for name, _ in spec.sweeps]
    for combo in _cartesian(grids):
        params = dict(spec.fixed)
        params.update(dict(zip(names, combo)))
        rows.append(evaluate_point(spec.family, spec.quantity, params,
                                   snr_mode=spec.snr_mode,
                                   ps_convention=spec.ps_convention))
    if spec.out_path is not None:
        write_csv(rows, spec.out_path)
    return rows


def _cartesian(grids):
    if not grids:
        yield ()
        return
    for head in grids[0]:
        for tail in _cartesian(grids[1:]):
            yield (head,) + tail


def write_csv(rows: Sequence[dict], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps the byte stream identical across platforms
    with open(path, "w", newline="") as handle:
        handle.write(rows_to_csv(rows))
    return path


# --- figure definitions -------------------------------------------------------

def _lin(start: float, stop: float, count: int) -> tuple:
    return tuple(float(x) for x in np.linspace(start, stop, count))


_MODVALS = (1.0, 5.0, 10.0, 20.0)
_LEVELS = tuple(range(16))


@dataclass(frozen=True)
class FigureDef:
    """Pinned parameters of one bundled figure: base point, panels, swept axes."""

    quantity: str
    family: str
    base: dict
    sweeps: tuple
    panels: tuple = (("", {}),)  # (suffix, overrides) per panel


FIGURES = {
    # coherent pointer, gamma=2, phi=0, m=2, modular values {1,5,10,20}
    "fig1": FigureDef("p_n", "coherent",
                      {"gamma": 2.0, "phi": 0.0, "m": 2},
                      (("modval", _MODVALS), ("n", _LEVELS))),
    "fig2": FigureDef("mandel_q", "coherent",
                      {"phi": 0.0, "m": 2},
                      (("modval", _MODVALS), ("gamma", _lin(0.05, 4.0, 80)))),
    "fig3": FigureDef("snr", "coherent",
                      {"phi": 0.0, "quad_theta": 0.0, "n_total": 1},
                      (("modval", _lin(1.0, 20.0, 20)), ("gamma", _lin(0.1, 4.0, 40))),
                      (("a", {"m": 2}), ("b", {"m": 5}), ("c", {"m": 10}))),
    # squeezed pointer, alpha=1, r=0.5, theta_sq=0 unless panel says otherwise
    "fig4": FigureDef("p_n", "squeezed",
                      {"alpha_re": 1.0, "alpha_im": 0.0, "r": 0.5, "theta_sq": 0.0, "m": 2},
                      (("modval", _MODVALS), ("n", _LEVELS))),
    # Squeezed tails decay only geometrically (ratio tanh^2 r per photon pair),
    # so the squeezed sweeps need a higher cutoff to hold the leak budget.
    "fig5": FigureDef("mandel_q", "squeezed",
                      {"alpha_im": 0.0, "theta_sq": 0.0, "m": 2, "dim": 128},
                      (("modval", _MODVALS), ("alpha_re", _lin(0.05, 4.0, 80))),
                      (("a", {"r": 0.5}), ("b", {"r": 1.0}))),
    "fig6": FigureDef("snr", "squeezed",
                      {"alpha_re": 0.5, "alpha_im": 0.0, "theta_sq": 0.0,
                       "quad_theta": 0.0, "n_total": 1, "dim": 128},
                      (("modval", _lin(1.0, 20.0, 20)), ("r", _lin(0.05, 1.25, 25))),
                      (("a", {"m": 2}), ("b", {"m": 5}))),
    # cat pointer
    "fig7": FigureDef("p_n", "cat",
                      {"alpha_im": 0.0, "phi_cat": math.pi / 3, "m": 2},
                      (("modval", _MODVALS), ("n", _LEVELS)),
                      (("a", {"alpha_re": 1.0}), ("b", {"alpha_re": 2.0}))),
    "fig8": FigureDef("mandel_q", "cat",
                      {"alpha_re": 0.2, "alpha_im": 0.0, "m": 2},
                      (("modval", _MODVALS),
                       ("phi_cat", _lin(0.0, 2.0 * math.pi * 359 / 360, 360)))),
    "fig9": FigureDef("snr", "cat",
                      {"alpha_im": 0.0, "phi_cat": 0.0, "quad_theta": 0.0, "n_total": 1},
                      (("modval", _lin(1.0, 20.0, 20)), ("alpha_re", _lin(0.1, 4.0, 40))),
                      (("a", {"m": 2}), ("b", {"m": 5}), ("c", {"m": 10}))),
}


def _panel_path(out: Optional[Path], figure_id: str, suffix: str) -> Path:
    if out is None:
        return Path(f"{figure_id}{suffix}.csv")
    out = Path(out)
    if suffix:
        return out.with_name(out.stem + suffix + (out.suffix or ".csv"))
    return out


def run_figure(figure_id: str, overrides: Optional[dict] = None,
               out: Optional[Path] = None, snr_mode: str = "shift",
               ps_convention: str = "paper") -> list[Path]:
    """Write the CSV file(s) behind one bundled figure; returns the paths."""
    if figure_id not in FIGURES:
        raise ValueError(f"unknown figure {figure_id!r}; expected fig1..fig9")
    fig = FIGURES[figure_id]
    overrides = dict(overrides or {})

    panel_keys = set().union(*(set(p[1]) for p in fig.panels))
    sweep_names = {name for name, _ in fig.sweeps}
    # dim / quad_theta / n_total always have a live default in the pipeline
    declared = set(fig.base) | panel_keys | sweep_names | {"dim", "quad_theta", "n_total"}
    unknown = set(overrides) - declared
    if unknown:
        raise ValueError(f"override(s) {sorted(unknown)} are not parameters of {figure_id}; "
                         f"declared: {sorted(declared)}")

    panels = fig.panels
    if panel_keys & set(overrides):
        # Overriding a panel-varied parameter collapses the figure to one panel.
        panels = (("", {k: overrides[k] for k in panel_keys & set(overrides)}),)

    paths = []
    for suffix, panel_overrides in panels:
        base = dict(fig.base)
        base.update(panel_overrides)
        base.update({k: v for k, v in overrides.items() if k not in sweep_names})
        sweeps = tuple(
            (name, (float(overrides[name]),) if name in overrides else values)
            for name, values in fig.sweeps
        )
        rows = run_sweep(SweepSpec(quantity=fig.quantity, family=fig.family,
                                   fixed=base, sweeps=sweeps,
                                   snr_mode=snr_mode, ps_convention=ps_convention))
        paths.append(write_csv(rows, _panel_path(out, figure_id, suffix)))
    return paths


# --- errata report ------------------------------------------------------------

#: Labels of the printed reference equations, used only in the errata output.
_EQ_LABEL = {
    ("coherent", "mean_n"): "Eq. 18", ("coherent", "mean_n2"): "Eq. 19",
    ("coherent", "quad_mean"): "Eq. 20", ("coherent", "quad_second"): "Eq. 21",
    ("squeezed", "mean_n"): "Eq. 26", ("squeezed", "mean_n2"): "Eq. 27",
    ("squeezed", "quad_mean"): "Eq. 28", ("squeezed", "quad_second"): "Eq. 29",
    ("cat", "quad_mean"): "Eq. 34", ("cat", "quad_second"): "Eq. 35",
}

_ERRATA_TOL = 1e-8


def _errata_points():
    """Deterministic evaluation points: every reference form at the figure
    defaults, at the no-interaction point (modular value 1) and at modular
    value 5."""
    coherent = Coherent(gamma=2.0, phi=0.0)
    squeezed = Squeezed(alpha=1.0 + 0.0j, r=0.5, theta_sq=0.0)
    cat = Cat(alpha=1.0 + 0.0j, phi_cat=math.pi / 3)
    for family, spec in (("coherent", coherent), ("squeezed", squeezed), ("cat", cat)):
        quantities = ("mean_n", "mean_n2", "quad_mean", "quad_second") \
            if family != "cat" else ("quad_mean", "quad_second")
        for quantity in quantities:
            for modval in (1.0, 5.0):
                yield family, spec, quantity, modval


def _param_text(family: str, modval: float) -> str:
    if family == "coherent":
        return f"coherent gamma=2 phi=0 m=2 modval={modval:g}"
    if family == "squeezed":
        return f"squeezed alpha=1 r=0.5 theta_sq=0 m=2 modval={modval:g}"
    return f"cat alpha=1 phi_cat=pi/3 m=2 modval={modval:g}"


def errata_entries(dim: int = DEFAULT_DIM) -> list[str]:
    """One text entry per printed-form defect, in equation order."""
    findings: dict[str, list[str]] = {}

    def add(label: str, line: str):
        findings.setdefault(label, []).append(line)

    for family, spec, quantity, modval in _errata_points():
        cfg = MeasurementConfig(sel=selection_for_modular_value(modval),
                                pointer=spec, m=2, dim=dim)
        report = closed_form_check(cfg, quantity, quad_theta=0.0)
        label = _EQ_LABEL[(family, quantity)]
        if report.reference is None:
            if not findings.get(label):
                add(label, f"{report.note}; the numeric pipeline is used instead.")
        elif report.abs_discrepancy > _ERRATA_TOL:
            add(label, f"at {_param_text(family, modval)}: printed form = "
                       f"{report.reference:.12g}, pipeline = {report.numeric:.12g}, "
                       f"|diff| = {report.abs_discrepancy:.3e}")

    # Conditional-probability branches as printed swap the level-m and level-n
    # weights; compare the off-level branch against the pipeline distribution.
    cfg = MeasurementConfig(sel=selection_for_modular_value(5.0),
                            pointer=Coherent(gamma=2.0, phi=0.0), m=2, dim=dim)
    amps = build_pointer(cfg.pointer, dim).amplitudes
    mv = modular_value(cfg.sel)
    printed_p1 = abs(amps[2]) ** 2 / (1.0 - abs(amps[1]) ** 2
                                      + abs(amps[1]) ** 2 * abs(mv) ** 2)
    pipeline_p1 = float(number_distribution(final_pointer_analytic(cfg))[1])
    add("Eq. 13", "off-level branch uses the projector-level weight in the numerator "
                  "and the running level in the normalizer (indices swapped); the "
                  "distribution is derived from the normalized final state instead. "
                  f"At coherent gamma=2 m=2 modval=5, n=1: printed = {printed_p1:.12g}, "
                  f"pipeline = {pipeline_p1:.12g}, |diff| = {abs(printed_p1 - pipeline_p1):.3e}")

    # Cat normalization: the printed coefficient carries 1/n! where only
    # 1/sqrt(n!) reproduces the stated normalization constant.
    alpha, phi_cat = 1.0, math.pi / 3
    norm_const = 2.0 + 2.0 * math.exp(-2.0 * alpha**2) * math.cos(phi_cat)
    base = math.exp(-0.5 * alpha**2)
    total = 0.0
    for n in range(dim):
        coeff = base * alpha**n / math.factorial(n) \
            * abs(1.0 + cmath.exp(1j * phi_cat) * (-1.0) ** n)
        total += coeff**2 / norm_const
    add("Eq. 31", "printed coefficient uses 1/n!; the stated normalization constant "
                  "N = 2 + 2 exp(-2|a|^2) cos(phi) holds only with 1/sqrt(n!), which the "
                  f"constructors use. With 1/n! at alpha=1 phi_cat=pi/3 the total "
                  f"probability is {total:.12g} instead of 1 (|diff| = {abs(total - 1.0):.3e}).")

    decisions = {
        "Eq. 13": "resolved by deriving p(n) from the normalized final pointer state.",
        "Eq. 20": "bracket misprint (the bare exp(|a|^2) term escapes the conj(alpha) "
                  "e^{i theta} product); ladder matrix elements used instead.",
        "Eq. 26": "printed form omits the post-selection normalizer and matches the "
                  "pipeline only at modular value 1; pipeline value used.",
        "Eq. 27": "printed form exceeds the second factorial moment by twice the mean "
                  "photon number even without interaction; pipeline value used.",
        "Eq. 31": "square-root-factorial convention adopted throughout.",
        "Eq. 34": "printed form carries a spurious bare 2*conj(alpha) term (a cat state "
                  "has no such displacement contribution); ladder matrix elements used.",
        "Eq. 35": "numeric pipeline used.",
    }
    entries = []
    for label in sorted(findings, key=lambda s: int(s.split()[1])):
        lines = "\n    ".join(findings[label])
        entries.append(f"* {label}: {lines}\n    decision: {decisions[label]}")
    return entries


def errata_report(out_path: Optional[Path] = None, dim: int = DEFAULT_DIM) -> str:
    """Discrepancy report between printed closed forms and the numeric pipeline."""
    header = (
        "Reference closed-form cross-check report\n"
        "========================================\n"
        "Each printed closed form was evaluated verbatim and compared against the\n"
        "oracle-validated numeric pipeline at the bundled figure parameter points\n"
        "(no interaction, and modular value 5). Only defects are listed; every\n"
        "other printed form agreed with the pipeline at all evaluated points to\n"
        f"{_ERRATA_TOL:.0e}.\n"
    )
    text = header + "\n" + "\n".join(errata_entries(dim)) + "\n"
    if out_path is not None:
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(text)
    return text


# --- argument parsing ----------------------------------------------------------

def _parse_sweep_token(token: str) -> tuple[str, tuple]:
    if "=" not in token:
        raise argparse.ArgumentTypeError(
            f"sweep must look like name=start:stop:count or name=v1,v2,..., got {token!r}")
    name, _, body = token.partition("=")
    name = name.strip()
    if name not in SWEEPABLE:
        raise argparse.ArgumentTypeError(f"parameter {name!r} cannot be swept")
    if ":" in body:
        pieces = body.split(":")
        if len(pieces) != 3:
            raise argparse.ArgumentTypeError(f"range must be start:stop:count, got {body!r}")
        start, stop, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
        if count < 1:
            raise argparse.ArgumentTypeError("count must be at least 1")
        values = _lin(start, stop, count)
    else:
        values = tuple(float(v) for v in body.split(","))
        if not values:
            raise argparse.ArgumentTypeError("explicit sweep list is empty")
    if name in _INT_PARAMS:
        values = tuple(int(round(v)) for v in values)
    return name, values


def _add_param_flags(p: argparse.ArgumentParser):
    p.add_argument("--pointer", choices=("coherent", "squeezed", "cat"),
                   help="pointer family (sweep verb only)")
    p.add_argument("--gamma", type=float, help="coherent magnitude")
    p.add_argument("--phi", type=float, help="coherent phase (radians)")
    p.add_argument("--alpha-re", type=float, dest="alpha_re")
    p.add_argument("--alpha-im", type=float, dest="alpha_im")
    p.add_argument("--r", type=float, help="squeezing magnitude")
    p.add_argument("--theta-sq", type=float, dest="theta_sq", help="squeeze phase")
    p.add_argument("--phi-cat", type=float, dest="phi_cat", help="cat relative phase")
    p.add_argument("--g", type=float, help="coupling strength")
    p.add_argument("--theta1", type=float, help="pre-selection polar angle")
    p.add_argument("--phi1", type=float, help="pre-selection azimuth")
    p.add_argument("--modval", type=float,
                   help="requested modular value; sets theta1=arctan(modval) "
                        "with g=pi/2, phi1=pi/2")
    p.add_argument("--m", type=int, help="projector level")
    p.add_argument("--dim", type=int, help="Fock truncation")
    p.add_argument("--quad-theta", type=float, dest="quad_theta", help="quadrature angle")
    p.add_argument("--n-total", type=int, dest="n_total", help="number of measurements N")
    p.add_argument("--snr-mode", choices=("final", "shift"), dest="snr_mode")
    p.add_argument("--ps", choices=("exact", "paper"), dest="ps_convention",
                   help="post-selection probability convention used in the SNR")
    p.add_argument("--out", type=Path, help="output path")


_PARAM_KEYS = ("gamma", "phi", "alpha_re", "alpha_im", "r", "theta_sq", "phi_cat",
               "g", "theta1", "phi1", "modval", "m", "dim", "quad_theta", "n_total")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modvalsim",
        description="Post-selected measurement sweeps over bosonic pointer states")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="write the CSV data behind a bundled figure")
    fig.add_argument("figure_id", choices=sorted(FIGURES))
    _add_param_flags(fig)

    sweep = sub.add_parser("sweep", help="evaluate a quantity over a parameter grid")
    _add_param_flags(sweep)
    sweep.add_argument("--quantity", choices=QUANTITIES, default="mandel_q")
    sweep.add_argument("--n", type=int, help="photon number for the p_n quantity")
    sweep.add_argument("--sweep", action="append", default=[], type=_parse_sweep_token,
                       metavar="PARAM=START:STOP:COUNT",
                       help="swept axis; repeat for a Cartesian product")

    err = sub.add_parser("errata", help="report printed-closed-form discrepancies")
    err.add_argument("--out", type=Path, default=Path("errata.txt"))
    err.add_argument("--dim", type=int, default=DEFAULT_DIM)

    chk = sub.add_parser("check", help="run the analytic-vs-oracle equivalence suite")
    chk.add_argument("--n-configs", type=int, default=200, dest="n_configs")
    chk.add_argument("--dim", type=int, default=DEFAULT_DIM)
    chk.add_argument("--seed", type=int, default=20260811)
    chk.add_argument("--tol", type=float, default=1e-9)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "figure":
        overrides = {k: getattr(args, k) for k in _PARAM_KEYS
                     if getattr(args, k, None) is not None}
        if args.pointer is not None:
            print("error: the pointer family of a figure is fixed", file=sys.stderr)
            return 2
        try:
            paths = run_figure(args.figure_id, overrides, out=args.out,
                               snr_mode=args.snr_mode or "shift",
                               ps_convention=args.ps_convention or "paper")
        except (ValueError, ArithmeticError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for path in paths:
            print(path)
        return 0

    if args.command == "sweep":
        fixed = {k: getattr(args, k) for k in _PARAM_KEYS
                 if getattr(args, k, None) is not None}
        if args.n is not None:
            fixed["n"] = args.n
        spec = SweepSpec(quantity=args.quantity,
                         family=args.pointer or "coherent",
                         fixed=fixed,
                         sweeps=tuple(args.sweep),
                         snr_mode=args.snr_mode or "shift",
                         ps_convention=args.ps_convention or "paper",
                         out_path=args.out or Path("sweep.csv"))
        try:
            rows = run_sweep(spec)
        except (ValueError, ArithmeticError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"{spec.out_path} ({len(rows)} rows)")
        return 0

    if args.command == "errata":
        text = errata_report(args.out, dim=args.dim)
        print(text, end="")
        return 0

    if args.command == "check":
        deviations = equivalence_deviations(args.n_configs, dim=args.dim, seed=args.seed)
        worst = float(deviations.max())
        status = "PASS" if worst < args.tol else "FAIL"
        print(f"{args.n_configs} random configurations, dim={args.dim}: "
              f"max amplitude deviation {worst:.3e} (tolerance {args.tol:.1e}) -> {status}")
        return 0 if status == "PASS" else 1

    raise AssertionError("unreachable")


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
