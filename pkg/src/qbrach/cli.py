"""Command-line entry point: ``qbrach {table1,table2,figure,solve,validate,sweep}``.

Output is a small document of named tables written as CSV (17 significant
digits) or JSON. Unless ``--no-meta`` is given a metadata block with the
command, its parameters and a timestamp is included; without it, identical
arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

from .brachistochrone import (
    TABLE1,
    TABLE2,
    BrachistochroneProblem,
    Formulation,
    amplitude_max,
    passage_time_analytic,
    passage_time_numeric,
    solve,
)
from .errors import NoClosedForm, NoRoot, QbrachError
from .figures import FIGURES, CurveSet, figure_curves
from .models import (
    DissipativeComplexModel,
    DissipativeRealModel,
    PtModel,
    dissipative_complex_model,
    dissipative_real_model,
    lambda_from_omega,
    pt_model,
)

EXIT_OK, EXIT_PARAM, EXIT_NOROOT = 0, 1, 2
MODELS = ("pt", "dissipative-real", "dissipative-complex")
DEFAULT_FORMULATION = {"pt": "BC2", "dissipative-real": "GH", "dissipative-complex": "TRANS"}

# --- output ---------------------------------------------------------------


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def render(doc: dict, fmt: str, meta: dict | None) -> str:
    """``doc`` maps table names to lists of row dicts (all rows share keys)."""
    if fmt == "json":
        out = {} if meta is None else {"meta": meta}
        for name, rows in doc.items():
            out[name] = [{k: _json_value(v) for k, v in row.items()} for row in rows]
        return json.dumps(out, indent=2, default=str) + "\n"
    buf = io.StringIO()
    if meta is not None:
        for k, v in meta.items():
            buf.write(f"# {k}={json.dumps(v, default=str)}\n")
    for i, (name, rows) in enumerate(doc.items()):
        if i:
            buf.write("\n")
        if len(doc) > 1:
            buf.write(f"# table={name}\n")
        if not rows:
            continue
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(_cell(v) for v in row.values())
    return buf.getvalue()


def emit(args, doc: dict) -> None:
    meta = None
    if not args.no_meta:
        params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out", "no_meta")}
        meta = {"command": args.command, "parameters": params,
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    text = render(doc, args.format, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- model construction -----------------------------------------------------


def model_from_args(args):
    """Build the model named by ``--model``; parameters validate in the constructor."""
    kind = args.model
    if kind == "pt":
        if args.alpha is not None or args.omega is not None:
            if args.alpha is None or args.omega is None:
                raise ValueError("--alpha and --omega go together")
            return PtModel.from_alpha_omega(args.alpha, args.omega, args.theta)
        return pt_model(args.r, args.s, args.theta)
    if kind == "dissipative-real":
        return dissipative_real_model(args.E, args.eps, args.r, args.s, args.theta, args.lambda_re)
    if kind == "dissipative-complex":
        return dissipative_complex_model(args.E, args.eps, complex(args.lambda_re, args.lambda_im),
                                         complex(args.phi_re, args.phi_im))
    raise ValueError(f"unknown model {kind!r}")


def _model_row(model) -> dict:
    row = {}
    for name in ("omega", "alpha"):
        v = getattr(model, name)
        if isinstance(v, complex):
            row[f"{name}_re"], row[f"{name}_im"] = v.real, v.imag
        else:
            row[name] = v
    if isinstance(model, DissipativeRealModel):
        row["decay_width"] = model.decay_width
    return row


# --- commands ---------------------------------------------------------------


def _table(model, rows, args) -> list[dict]:
    out = []
    for i, (psi_i, psi_f, form) in enumerate(rows, 1):
        p = BrachistochroneProblem(model, form, args.level)
        ana = passage_time_analytic(p)
        row = {"row": i, "initial": psi_i, "final": psi_f, "formulation": form.value,
               "formula": ana.formula, "tau_analytic": ana.tau}
        if isinstance(model, DissipativeRealModel):
            # with decay the literal first crossing sits on the rising flank;
            # the reported time is the crossing after the amplitude maximum
            _, t_peak = amplitude_max(p, t_max=ana.tau, grid_n=args.grid_n)
            num = passage_time_numeric(p, args.t_max, args.grid_n, t_min=t_peak)
            first = passage_time_numeric(p, args.t_max, args.grid_n)
            row.update(tau_numeric=num.tau, abs_diff=abs(ana.tau - num.tau), residual=num.residual,
                       tau_first_crossing=first.tau)
        else:
            num = passage_time_numeric(p, args.t_max, args.grid_n)
            row.update(tau_numeric=num.tau, abs_diff=abs(ana.tau - num.tau), residual=num.residual)
        out.append(row)
    return out


def cmd_table1(args) -> int:
    model = pt_model(args.r, args.s, args.theta)
    emit(args, {"model": [_model_row(model)], "rows": _table(model, TABLE1, args)})
    return EXIT_OK


def cmd_table2(args) -> int:
    model = dissipative_real_model(args.E, args.eps, args.r, args.s, args.theta, args.lambda_re)
    emit(args, {"model": [_model_row(model)], "rows": _table(model, TABLE2, args)})
    return EXIT_OK


_FIGURE_OVERRIDES = ("E", "eps", "lambda_re", "lambda_im", "phi_re", "phi_im")


def cmd_figure(args) -> int:
    overrides = {k: getattr(args, k) for k in _FIGURE_OVERRIDES if getattr(args, k) is not None}
    sets = FIGURES[args.id]
    if overrides:
        get = overrides.get
        sets = tuple(
            CurveSet(cs.label, get("E", cs.E), get("eps", cs.eps),
                     complex(get("lambda_re", cs.lam.real), get("lambda_im", cs.lam.imag)),
                     complex(get("phi_re", complex(cs.phi).real), get("phi_im", complex(cs.phi).imag)),
                     cs.omega_target)
            for cs in sets
        )
    curves = figure_curves(args.id, args.t_max, args.grid_n, args.samples, sets=sets)
    summary, samples = [], []
    for i, c in enumerate(curves, 1):
        cs = c.curve_set
        err_re, err_im = c.omega_error
        row = {"set": i, "label": cs.label, "E": cs.E, "eps": cs.eps,
               "lambda_re": cs.lam.real, "lambda_im": cs.lam.imag,
               "phi_re": complex(cs.phi).real, "phi_im": complex(cs.phi).imag,
               "omega_re": c.omega.real, "omega_im": c.omega.imag,
               "target_omega_re": cs.omega_target.real, "target_omega_im": cs.omega_target.imag,
               "omega_abs_diff_re": err_re, "omega_abs_diff_im": err_im}
        if c.root is not None:
            row.update(status="root", tau=c.root.tau, residual=c.root.residual,
                       min_abs_residual=None, t_at_min=None)
        else:
            row.update(status="no_root", tau=None, residual=None,
                       min_abs_residual=c.no_root.min_abs, t_at_min=c.no_root.t_at_min)
        summary.append(row)
        samples.extend({"set": i, "t": t, "residual": r} for t, r in zip(c.t, c.residual))
    emit(args, {"sets": summary, "samples": samples})
    return EXIT_OK


def cmd_solve(args) -> int:
    model = model_from_args(args)
    form = args.formulation or DEFAULT_FORMULATION[args.model]
    p = BrachistochroneProblem(model, form, args.level)
    if args.method == "analytic":
        res = passage_time_analytic(p)
    elif args.method == "numeric":
        res = passage_time_numeric(p, args.t_max, args.grid_n)
    else:
        res = solve(p, args.t_max, args.grid_n)
    row = {"formulation": p.formulation.value, "level": p.level, "tau": res.tau, "method": res.method,
           "residual": res.residual, "formula": res.formula,
           "bracket_lo": res.bracket[0] if res.bracket else None,
           "bracket_hi": res.bracket[1] if res.bracket else None}
    emit(args, {"model": [_model_row(model)], "result": [row]})
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validate import run_all

    results = run_all()
    rows = [{"check": r.name, "passed": r.passed, "worst": r.worst, "tol": r.tol, "detail": r.detail}
            for r in results]
    for r in results:
        print(r.line(), file=sys.stderr)
    emit(args, {"checks": rows})
    return EXIT_OK if all(r.passed for r in results) else EXIT_PARAM


# --- sweep ------------------------------------------------------------------

SWEEPABLE = {
    "pt": ("alpha", "theta"),
    "dissipative-real": ("lambda", "s", "r", "theta", "E"),
    "dissipative-complex": ("phi", "eps", "E"),
}


def parse_vary(spec: str) -> tuple[str, np.ndarray]:
    """``name:start:stop:n`` -> (name, values). Endpoints are excluded when ``open`` is appended."""
    parts = spec.split(":")
    if len(parts) not in (4, 5):
        raise ValueError(f"--vary takes name:start:stop:n[:open], got {spec!r}")
    name, start, stop, n = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    if n < 1:
        raise ValueError("--vary needs n >= 1")
    if len(parts) == 5:
        if parts[4] != "open":
            raise ValueError(f"unknown --vary flag {parts[4]!r}")
        values = np.linspace(start, stop, n + 2)[1:-1]
    else:
        values = np.linspace(start, stop, n)
    return name, values


def fixed_omega_model(kind: str, base: dict, omega: complex):
    """Model with transition frequency ``omega``; the dependent parameter absorbs the constraint."""
    if kind == "pt":
        return PtModel.from_alpha_omega(base["alpha"], float(omega.real), base["theta"])
    if kind == "dissipative-real":
        lam, s, r, theta = base["lambda"], base["s"], base["r"], base["theta"]
        shifted = math.sqrt(omega.real**2 / 4 + (lam * s) ** 2)
        return DissipativeRealModel(base["E"], shifted - r * lam * math.sin(theta), r, s, theta, lam)
    if kind == "dissipative-complex":
        lam = lambda_from_omega(base["eps"], base["phi"], omega)[0]
        return DissipativeComplexModel(base["E"], base["eps"], lam, base["phi"])
    raise ValueError(f"unknown model {kind!r}")


def _sweep_cell(job):
    kind, base, omega, form, level, t_max, grid_n = job
    row = dict(base)
    try:
        model = fixed_omega_model(kind, base, omega)
        if isinstance(model, DissipativeComplexModel):
            row.update(lambda_re=model.lam.real, lambda_im=model.lam.imag)
        if isinstance(model, DissipativeRealModel):
            row["eps"] = model.eps
        if isinstance(model, PtModel):
            row.update(r=model.r, s=model.s)
        w = model.omega
        row.update(omega_re=complex(w).real, omega_im=complex(w).imag)
        res = solve(BrachistochroneProblem(model, form, level), t_max, grid_n)
        row.update(tau=res.tau, residual=res.residual, method=res.method, error="")
    except NoRoot as e:
        row.update(tau=None, residual=e.min_abs, method="numeric", error="no_root")
    except (QbrachError, ValueError) as e:
        row.update(tau=None, residual=None, method="", error=type(e).__name__)
    return row


def _sweep_base(args) -> dict:
    kind = args.model
    if kind == "pt":
        return {"alpha": args.alpha if args.alpha is not None else 0.0, "theta": args.theta}
    if kind == "dissipative-real":
        return {"lambda": args.lambda_re, "s": args.s, "r": args.r, "theta": args.theta, "E": args.E}
    return {"phi": complex(args.phi_re, args.phi_im), "eps": args.eps, "E": args.E}


def cmd_sweep(args) -> int:
    kind = args.model
    if not args.vary or len(args.vary) > 2:
        raise ValueError("sweep takes one or two --vary options")
    axes = [parse_vary(v) for v in args.vary]
    for name, _ in axes:
        if name not in SWEEPABLE[kind]:
            raise ValueError(f"{kind} sweeps one of {SWEEPABLE[kind]}, got {name!r}")
    omega = complex(args.omega_re, args.omega_im)
    if kind != "dissipative-complex" and omega.imag != 0:
        raise ValueError(f"{kind} needs a real omega")
    form = args.formulation or DEFAULT_FORMULATION[kind]
    base = _sweep_base(args)
    names = [name for name, _ in axes]
    jobs = []
    for combo in itertools.product(*(vals for _, vals in axes)):
        cell = dict(base)
        for name, value in zip(names, combo):
            cell[name] = complex(value) if name == "phi" else float(value)
        jobs.append((kind, cell, omega, form, args.level, args.t_max, args.grid_n))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_cell, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        rows = [_sweep_cell(j) for j in jobs]
    for row in rows:
        if "phi" in row:
            phi = complex(row.pop("phi"))
            row["phi_re"], row["phi_im"] = phi.real, phi.imag
    keys = list(dict.fromkeys(k for row in rows for k in row))
    emit(args, {"sweep": [{k: row.get(k) for k in keys} for row in rows]})
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def read_config(path: str) -> dict:
    """Flat ``key=value`` file; ``#`` starts a comment, dashes in keys become underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _add_common(p: argparse.ArgumentParser, model: str | None = None) -> None:
    g = p.add_argument_group("model parameters")
    if model is None:
        g.add_argument("--model", choices=MODELS, default="pt")
    g.add_argument("--r", type=float, default=1.0)
    g.add_argument("--s", type=float, default=2.0)
    g.add_argument("--theta", type=float, default=math.pi / 4)
    g.add_argument("--E", type=float, default=2.0)
    g.add_argument("--eps", type=float, default=2.5)
    g.add_argument("--lambda-re", type=float, default=None)
    g.add_argument("--lambda-im", type=float, default=0.0)
    g.add_argument("--phi-re", type=float, default=0.2)
    g.add_argument("--phi-im", type=float, default=0.0)
    g.add_argument("--alpha", type=float, default=None, help="PT only, with --omega")
    g.add_argument("--omega", type=float, default=None, help="PT only, with --alpha")
    s = p.add_argument_group("solver")
    s.add_argument("--formulation", choices=[f.value for f in Formulation] + [f.name for f in Formulation],
                   default=None)
    s.add_argument("--level", type=float, default=None)
    s.add_argument("--t-max", type=float, default=None)
    s.add_argument("--grid-n", type=int, default=4096)
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--out", default=None)
    o.add_argument("--no-meta", action="store_true")
    o.add_argument("--config", default=None, help="key=value file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbrach", description="Passage times for non-Hermitian two-level systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="the four PT state-pair passage times")
    _add_common(p, model="pt")
    p.set_defaults(func=cmd_table1, model="pt")

    p = sub.add_parser("table2", help="the four dissipative real-frequency passage times")
    _add_common(p, model="dissipative-real")
    p.set_defaults(func=cmd_table2, model="dissipative-real", lambda_re=0.5, r=0.5, s=1.0, theta=0.3, eps=2.0)

    p = sub.add_parser("figure", help="residual curves and roots for the built-in complex-frequency sets")
    _add_common(p, model="dissipative-complex")
    p.add_argument("--id", type=int, choices=(1, 2), required=True)
    p.add_argument("--samples", type=int, default=401, help="residual samples per curve")
    # overrides default to None so unset flags keep the built-in values
    p.set_defaults(func=cmd_figure, model="dissipative-complex", E=None, eps=None, lambda_re=None,
                   lambda_im=None, phi_re=None, phi_im=None)

    p = sub.add_parser("solve", help="one passage-time problem")
    _add_common(p)
    p.add_argument("--method", choices=("auto", "analytic", "numeric"), default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="run the invariant suite")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sweep", help="passage time over a parameter grid at fixed transition frequency")
    _add_common(p)
    p.add_argument("--vary", action="append", default=[], help="name:start:stop:n[:open]; up to two")
    p.add_argument("--omega-re", type=float, default=2.0)
    p.add_argument("--omega-im", type=float, default=0.0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        values = {}
        for key, raw in read_config(args.config).items():
            if key not in known or key in ("config", "help"):
                raise ValueError(f"unknown config key {key!r}")
            action = known[key]
            if action.const is True:
                values[key] = raw.lower() in ("1", "true", "yes")
            elif action.type is not None:
                values[key] = action.type(raw)
            else:
                values[key] = raw
        sub.set_defaults(**values)
        args = parser.parse_args(argv)
    if args.lambda_re is None and args.model == "dissipative-real" and args.command != "figure":
        args.lambda_re = 0.5
    if args.lambda_re is None and args.model == "dissipative-complex" and args.command != "figure":
        args.lambda_re = 3.5
    if args.formulation in Formulation.__members__:
        args.formulation = Formulation[args.formulation].value
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
        return args.func(args)
    except NoRoot as e:
        print(f"no root: {e}", file=sys.stderr)
        return EXIT_NOROOT
    except NoClosedForm as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except (QbrachError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
