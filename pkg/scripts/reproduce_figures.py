"""Residual curves and first roots for the two built-in complex-frequency figures.

For each figure writes figureN_curves.csv (t, residual per set) and
figureN_roots.csv (recomputed omega, root or closest approach).

    python3 scripts/reproduce_figures.py --out results/ --samples 801
"""

import argparse
import csv
from pathlib import Path

from qbrach.figures import FIGURES, figure_curves


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--samples", type=int, default=801)
    ap.add_argument("--grid-n", type=int, default=8192)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for fig_id in FIGURES:
        curves = figure_curves(fig_id, grid_n=args.grid_n, n_samples=args.samples)
        with open(out / f"figure{fig_id}_curves.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["set", "label", "t", "residual"])
            for i, c in enumerate(curves, 1):
                w.writerows([i, c.curve_set.label, format(t, ".17g"), format(r, ".17g")]
                            for t, r in zip(c.t, c.residual))
        with open(out / f"figure{fig_id}_roots.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["set", "label", "omega_re", "omega_im", "tau", "min_abs_residual", "t_at_min"])
            for i, c in enumerate(curves, 1):
                if c.root is not None:
                    w.writerow([i, c.curve_set.label, c.omega.real, c.omega.imag, c.root.tau, "", ""])
                else:
                    w.writerow([i, c.curve_set.label, c.omega.real, c.omega.imag, "",
                                c.no_root.min_abs, c.no_root.t_at_min])
        print(f"figure {fig_id}:")
        for c in curves:
            where = f"tau = {c.root.tau:.10f}" if c.root else f"no root (min |residual| {c.no_root.min_abs:.3g})"
            print(f"  {c.curve_set.label:10s} omega = {c.omega:.4f}  {where}")


if __name__ == "__main__":
    main()
