"""Command-line front end producing deterministic CSV or JSON reports.

Exit status: 0 on success, 1 on parse or validation errors, 2 on numerical
failure (the diagnostic report is still written).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .attraction import (
    DEFAULT_MULTIPLIERS,
    DEFAULT_SCALES,
    EstimationFailure,
    doa_check,
    rv_index_estimate,
)
from .cauchy import NumericalFailure
from .distfn import (
    Dagum,
    Step,
    boolean_max_conv,
    classical_max_conv,
    geometric_grid,
    load_spec,
    to_spec,
    transfer,
    transfer_inverse,
)
from .operator_model import boolean_embed, diagonal_model, projection_model, spectral_max_distribution
from .stable_laws import stability_check

COMMANDS = ("convolve", "transfer", "stability", "rv", "doa", "oracle")
N_INPUTS = {"convolve": 2, "transfer": 1, "stability": 1, "rv": 1, "doa": 2, "oracle": 0}
DEFAULT_N = {"stability": (2, 10, 1000, 1000000), "doa": (10, 100, 1000, 10000)}

COLUMNS = {
    "convolve": ("t", "F", "G", "classical", "boolean"),
    "transfer": ("t", "F", "transfer", "transfer_inverse"),
    "stability": ("n", "a_n", "defect", "within_tolerance"),
    "rv": ("scale", "multiplier", "alpha_tail", "alpha_transferred_tail"),
    "doa": ("n", "a_n", "sup_error"),
    "oracle": ("section", "p", "q", "t", "closed_form", "operator_model", "abs_difference"),
}


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    grid_min: float = 0.1
    grid_max: float = 10.0
    grid_points: int = 50
    n_values: list = field(default_factory=list)
    tolerance: float = 1e-9
    output: str | None = None
    format: str = "csv"

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if len(self.inputs) != N_INPUTS[self.command]:
            raise UsageError(f"{self.command} takes {N_INPUTS[self.command]} spec file(s), got {len(self.inputs)}")
        if not (self.grid_min > 0 and self.grid_max > self.grid_min and self.grid_points >= 2):
            raise UsageError("grid needs 0 < --grid-min < --grid-max and --grid-points >= 2")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if any(n < 1 for n in self.n_values):
            raise UsageError("--n values must be positive integers")
        if self.format not in ("csv", "json"):
            raise UsageError("--format is csv or json")

    def grid(self):
        return geometric_grid(self.grid_min, self.grid_max, self.grid_points)

    def ns(self):
        return sorted(set(self.n_values or DEFAULT_N.get(self.command, ())))


def _fmt(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def render(command, rows, meta, fmt):
    cols = COLUMNS[command]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()
    doc = {
        "metadata": {k: _json_value(v) if not isinstance(v, (dict, list)) else v for k, v in meta.items()},
        "rows": [{c: _json_value(v) for c, v in zip(cols, row)} for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _convolve(cfg, dists):
    F, G = dists
    t = cfg.grid()
    rows = zip(t, F(t), G(t), classical_max_conv(F, G)(t), boolean_max_conv(F, G)(t))
    return list(rows), {}


def _transfer(cfg, dists):
    (F,) = dists
    t = cfg.grid()
    return list(zip(t, F(t), transfer(F)(t), transfer_inverse(F)(t))), {}


def _stability(cfg, dists):
    (F,) = dists
    if not isinstance(F, Dagum):
        raise UsageError("stability takes a dagum spec")
    rows = []
    for n in cfg.ns():
        rep = stability_check(F, n, cfg.grid())
        rows.append((rep.n, rep.a_n, rep.defect, rep.defect <= cfg.tolerance))
    return rows, {"max_defect": max(r[2] for r in rows)}


def _rv(cfg, dists):
    (G,) = dists
    meta = {}
    failed = []
    results = {}
    for label, tail in (("tail", G.tail), ("transferred_tail", transfer(G).tail)):
        try:
            est = rv_index_estimate(tail, DEFAULT_SCALES, DEFAULT_MULTIPLIERS)
        except EstimationFailure as exc:
            failed.append(f"{label}: {exc}")
            meta[f"alpha_hat_{label}"] = None
            continue
        results[label] = {(t, x): a for t, x, a in est.estimates}
        meta[f"alpha_hat_{label}"] = est.alpha_hat
        meta[f"converged_{label}"] = est.converged
        meta[f"dispersion_{label}"] = est.dispersion
    rows = []
    for t in DEFAULT_SCALES:
        for x in DEFAULT_MULTIPLIERS:
            a = results.get("tail", {}).get((t, x), math.nan)
            b = results.get("transferred_tail", {}).get((t, x), math.nan)
            rows.append((t, x, a, b))
    if "tail" in results and "transferred_tail" in results:
        meta["difference"] = abs(meta["alpha_hat_tail"] - meta["alpha_hat_transferred_tail"])
    if failed:
        meta["failure"] = "; ".join(failed)
    return rows, meta


def _doa(cfg, dists):
    G, target = dists
    if not isinstance(target, Dagum):
        raise UsageError("doa target must be a dagum spec")
    rep = doa_check(G, target, cfg.ns(), cfg.grid())
    meta = {"decreasing": rep.decreasing, "eventually_decreasing": rep.eventually_decreasing}
    if rep.failure:
        meta["failure"] = rep.failure
        return [], meta
    return list(zip(rep.n_values, rep.norming, rep.errors)), meta


ORACLE_PQ = tuple(round(0.1 * k, 1) for k in range(1, 10))
# fixed instance for the distribution-function comparison
ORACLE_X = ((0.0, 2.0), (0.3, 0.7))
ORACLE_Y = ((0.0, 3.0), (0.6, 0.4))


def _oracle(cfg, dists):
    rows = []
    for p in ORACLE_PQ:
        for q in ORACLE_PQ:
            emb = boolean_embed(projection_model(p, "P"), projection_model(q, "Q"))
            r_op = spectral_max_distribution(emb, [0.5])[0][1]
            r = 1.0 / (1.0 / p + 1.0 / q - 1.0)
            rows.append(("projection_sweep", p, q, 0.5, r, r_op, abs(r - r_op)))
    X = diagonal_model(ORACLE_X[0], np.sqrt(ORACLE_X[1]), "X")
    Y = diagonal_model(ORACLE_Y[0], np.sqrt(ORACLE_Y[1]), "Y")
    F = Step(list(zip(*ORACLE_X)))
    G = Step(list(zip(*ORACLE_Y)))
    emb = boolean_embed(X, Y)
    t = cfg.grid()
    closed = boolean_max_conv(F, G)(t)
    for (tt, v), c in zip(spectral_max_distribution(emb, t), closed):
        rows.append(("distribution_grid", ORACLE_X[1][0], ORACLE_Y[1][0], tt, c, v, abs(c - v)))
    worst = max(r[-1] for r in rows)
    return rows, {"max_abs_difference": worst, "within_tolerance": worst <= cfg.tolerance}


HANDLERS = {
    "convolve": _convolve,
    "transfer": _transfer,
    "stability": _stability,
    "rv": _rv,
    "doa": _doa,
    "oracle": _oracle,
}


def run(cfg, stdout=None, stderr=None):
    """Execute a validated :class:`RunConfig`; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg.validate()
        dists = [load_spec(path) for path in cfg.inputs]
        meta = {"tool": "boolmax", "version": __version__, "config": asdict(cfg)}
        meta["config"]["n_values"] = cfg.ns()
        # where the report lands is not part of its content
        del meta["config"]["output"]
        meta["inputs"] = [to_spec(d) for d in dists]
        status = 0
        try:
            rows, extra = HANDLERS[cfg.command](cfg, dists)
        except NumericalFailure as exc:
            rows, extra, status = [], {"failure": str(exc)}, 2
        if "failure" in extra:
            status = 2
            print(f"boolmax: numerical failure: {extra['failure']}", file=stderr)
        meta.update(extra)
    except (UsageError, ValueError, OSError) as exc:
        print(f"boolmax: error: {exc}", file=stderr)
        return 1
    text = render(cfg.command, rows, meta, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def build_parser():
    parser = argparse.ArgumentParser(prog="boolmax", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"boolmax {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "convolve": "classical and Boolean max-convolution of two distributions",
        "transfer": "transfer map and its inverse",
        "stability": "exact Boolean max-stability defects of a Dagum law",
        "rv": "regular-variation index of 1-G and of the transferred tail",
        "doa": "convergence of normed Boolean max-powers to a Dagum target",
        "oracle": "operator-model sweeps against closed forms",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        if N_INPUTS[name]:
            p.add_argument("inputs", nargs=N_INPUTS[name], metavar="SPEC", help="distribution spec (JSON)")
        p.add_argument("--grid-min", type=float, default=0.1)
        p.add_argument("--grid-max", type=float, default=10.0)
        p.add_argument("--grid-points", type=int, default=50)
        p.add_argument("--n", type=int, action="append", dest="n_values", default=[])
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    cfg = RunConfig(
        command=args.command,
        inputs=list(getattr(args, "inputs", []) or []),
        grid_min=args.grid_min,
        grid_max=args.grid_max,
        grid_points=args.grid_points,
        n_values=args.n_values,
        tolerance=args.tolerance,
        output=args.output,
        format=args.format,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
