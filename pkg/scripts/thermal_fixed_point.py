"""Stationary population ratio of a qubit in a thermal bath.

Master equation (long-time propagation and the Liouvillian kernel) and the
collision oracle are compared with the detailed-balance value n/(n+1).
"""
import argparse

import numpy as np
from scipy.linalg import null_space

from gaussqsde import GaussianBathParams, GaussianModel, build_liouvillian, evolve_density
from gaussqsde.operator_core import SIGMA_MINUS, unvec
from gaussqsde.oracle import OracleConfig, run_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0])
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--oracle-dt", type=float, default=1e-3)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()

    excited = np.diag([0.0, 1.0]).astype(complex)
    print(f"{'n':>6s} {'n/(n+1)':>10s} {'kernel':>10s} {'t=20/g':>10s} {'oracle':>10s}")
    for n in args.n:
        model = GaussianModel(SIGMA_MINUS, np.zeros((2, 2)), GaussianBathParams(args.gamma, n=n))
        rho = unvec(null_space(build_liouvillian(model).matrix)[:, 0], 2)
        kernel = (rho[1, 1] / rho[0, 0]).real
        p = evolve_density(model, excited, 20 / args.gamma, 40).populations()[-1]
        line = f"{n:6.2f} {n / (n + 1):10.6f} {kernel:10.6f} {p[1] / p[0]:10.6f}"
        if not args.no_oracle:
            T = 10 / args.gamma
            q = run_oracle(OracleConfig(model, args.oracle_dt, T)).trajectory.populations()[-1]
            line += f" {q[1] / q[0]:10.6f}"
        print(line)


if __name__ == "__main__":
    main()
