"""Which placement of m and m* in the jump terms matches the collision model?

For complex m the generator with m C^+ X C^+ + m* C X C (used throughout the
package) and the swapped variant m C X C + m* C^+ X C^+ differ.  Both are
propagated from the same initial state and compared with the oracle, which
knows nothing about the generator.  The swapped variant is not trace
preserving, so its state is renormalized before comparison.
"""
import argparse

import numpy as np

from gaussqsde import GaussianBathParams, GaussianModel, heisenberg_generator
from gaussqsde.operator_core import (
    dag,
    matrix_exponential,
    sprepost,
    trace_distance,
    unvec,
    vec,
)
from gaussqsde.oracle import OracleConfig, run_oracle


def swapped_schrodinger(model):
    b, C = model.bath, model.C
    Cd = dag(C)
    L = heisenberg_generator(model).matrix + b.gamma * (
        (b.m - np.conj(b.m)) * sprepost(C, C) + (np.conj(b.m) - b.m) * sprepost(Cd, Cd)
    )
    return dag(L)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dt", type=float, default=1e-3)
    ap.add_argument("--t-max", type=float, default=1.0)
    ap.add_argument("--fock-dim", type=int, default=5)
    args = ap.parse_args()

    C = np.array([[0.2, 1.0], [0.0, -0.4]], dtype=complex)
    print(f"{'phase of m':>10s} {'oracle-used':>12s} {'oracle-swapped':>15s} {'tr(swapped)':>12s}")
    for phase in np.linspace(0, np.pi, 5):
        m = 0.8 * np.exp(1j * phase)
        model = GaussianModel(C, np.zeros((2, 2)), GaussianBathParams(1.0, n=1.0, m=m))
        res = run_oracle(OracleConfig(model, args.dt, args.t_max, fock_dim=args.fock_dim))
        rho0 = res.trajectory.states[0]
        wrong = unvec(matrix_exponential(args.t_max * swapped_schrodinger(model)) @ vec(rho0), 2)
        tr = np.trace(wrong).real
        wrong = 0.5 * (wrong + dag(wrong)) / tr
        print(f"{phase:10.3f} {res.final_distance:12.2e} "
              f"{trace_distance(res.trajectory.final, wrong):15.2e} {tr:12.6f}")


if __name__ == "__main__":
    main()
