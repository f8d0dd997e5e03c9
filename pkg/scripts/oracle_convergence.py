"""Collision-model convergence for a set of baths.

Runs the oracle at dt, dt/2, ... for vacuum, thermal, squeezed and displaced
baths with C = sigma_minus and prints (and optionally writes) the error
table.  Halving ratios near 2 indicate first-order convergence.
"""
import argparse
import csv

import numpy as np

from gaussqsde import GaussianBathParams, GaussianModel
from gaussqsde.operator_core import SIGMA_MINUS
from gaussqsde.oracle import OracleConfig, convergence_ratios, convergence_study

BATHS = {
    "vacuum": GaussianBathParams(1.0),
    "thermal": GaussianBathParams(1.0, n=1.0),
    "squeezed": GaussianBathParams(1.0, n=1.0, m=1.0),
    "squeezed_complex": GaussianBathParams(1.0, n=1.0, m=0.8j),
    "displaced": GaussianBathParams(1.0, alpha=0.3),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dt", type=float, default=2e-3)
    ap.add_argument("--halvings", type=int, default=2)
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--fock-dim", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--output", help="CSV with one row per (bath, dt)")
    args = ap.parse_args()

    rows = []
    for name, bath in BATHS.items():
        model = GaussianModel(SIGMA_MINUS, np.zeros((2, 2)), bath)
        cfg = OracleConfig(model, args.dt, args.t_max, fock_dim=args.fock_dim)
        study = convergence_study(cfg, args.halvings, workers=args.workers)
        ratios = [float("nan")] + convergence_ratios(study)
        for (dt, err), r in zip(study, ratios):
            rows.append((name, dt, err, r))
            print(f"{name:17s} dt={dt:.2e}  max trace distance={err:.3e}  ratio={r:.3f}")

    if args.output:
        with open(args.output, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["bath", "dt", "max_trace_distance", "ratio_to_previous"])
            w.writerows(rows)


if __name__ == "__main__":
    main()
