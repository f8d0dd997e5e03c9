"""Command-line interface.

    gaussqsde <command> --config PATH [--t-max X] [--steps N] [--dt X]
                                      [--fock-dim N] [--output PATH]

Commands: validate, convert, generator, evolve, oracle, check.
Exit codes: 0 success, 1 a check or constraint failed, 2 malformed config.
"""
import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .bath import validate_bath
from .coeffs import normal_to_hp, unitarity_residual
from .config import ConfigError, complex_to_json, config_to_json, load_config, matrix_to_json
from .errors import ValidationError
from .evolution import build_liouvillian, evolve_density
from .generator import build_G, gks_matrix, vacuum_generator
from .operator_core import basis_projector
from .oracle import OracleConfig, convergence_ratios, convergence_study, run_oracle

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
COMMANDS = ("validate", "convert", "generator", "evolve", "oracle", "check")


def fmt(x):
    """17 significant digits, enough for an exact float round-trip."""
    return f"{float(x):.17g}"


def _fmt_matrix(A):
    lines = []
    for row in np.asarray(A):
        lines.append("  [" + ", ".join(f"{v.real:+.6e}{v.imag:+.6e}j" for v in row) + "]")
    return "\n".join(lines)


def _sorted_spectrum(ev):
    ev = np.asarray(ev)
    return ev[np.lexsort((np.round(ev.imag, 12), np.round(ev.real, 12)))]


class _Output:
    """Write to --output when given, otherwise stdout."""

    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = open(self.path, "w", newline="") if self.path else sys.stdout
        return self.fh

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()


def cmd_validate(cfg, args):
    report = validate_bath(cfg.bath)
    problems = list(report.violations)
    try:
        cfg.model()
    except ValidationError as exc:
        problems.append(str(exc))
    if problems:
        for p in problems:
            print(f"violated: {p}")
        return EXIT_FAIL
    print("all constraints satisfied")
    return EXIT_OK


def cmd_convert(cfg, args):
    if cfg.presentation == "normal_ordered":
        print("input is already normal-ordered")
    Lc = cfg.normal_ordered()
    for name in ("L11", "L10", "L01", "L00"):
        print(f"{name} =\n{_fmt_matrix(getattr(Lc, name))}")
    res = unitarity_residual(Lc)
    print(f"unitarity residual = {res:.3e}")
    try:
        hp = normal_to_hp(Lc)
    except ValidationError as exc:
        print(f"HP parameters not extractable: {exc}")
    else:
        for name in ("W", "H", "L"):
            print(f"{name} =\n{_fmt_matrix(getattr(hp, name))}")
    if args.output:
        cfg.presentation = "normal_ordered"
        cfg.coefficients = {n: np.array(getattr(Lc, n)) for n in ("L11", "L10", "L01", "L00")}
        Path(args.output).write_text(json.dumps(config_to_json(cfg), indent=2))
        print(f"wrote normal-ordered config to {args.output}")
    return EXIT_OK


def generator_report(cfg):
    """Everything `generator` emits, as a JSON-ready dict."""
    gks = gks_matrix(cfg.model())
    gks_eigs = np.linalg.eigvalsh(gks)
    out = {
        "gks": matrix_to_json(gks),
        "gks_eigenvalues": [float(v) for v in gks_eigs],
        "gks_psd": bool(gks_eigs.min() >= -1e-12 * max(1.0, abs(gks).max())),
        "bath_valid": validate_bath(cfg.bath).ok,
    }
    if out["bath_valid"]:
        model = cfg.model()
        out["G"] = matrix_to_json(build_G(model))
        spec = _sorted_spectrum(build_liouvillian(model).eigenvalues())
        out["liouvillian_spectrum"] = [complex_to_json(v) for v in spec]
    if cfg.presentation is not None:
        Lc = cfg.normal_ordered()
        out["unitarity_residual"] = unitarity_residual(Lc)
        sup = vacuum_generator(Lc)
        out["coefficient_generator"] = matrix_to_json(sup.matrix)
        out["coefficient_generator_spectrum"] = [
            complex_to_json(v) for v in _sorted_spectrum(sup.eigenvalues())
        ]
    return out


def cmd_generator(cfg, args):
    rep = generator_report(cfg)
    text = json.dumps(rep, indent=2)
    if args.output:
        Path(args.output).write_text(text)
    gks = np.array([[complex(*v) for v in row] for row in rep["gks"]])
    print(f"GKS matrix =\n{_fmt_matrix(gks)}")
    print("GKS eigenvalues = " + ", ".join(f"{v:.6g}" for v in rep["gks_eigenvalues"]))
    if "G" in rep:
        G = np.array([[complex(*v) for v in row] for row in rep["G"]])
        print(f"G =\n{_fmt_matrix(G)}")
        print("Liouvillian spectrum = " + ", ".join(
            f"{complex(*v):.6g}" for v in rep["liouvillian_spectrum"]))
    if not rep["gks_psd"]:
        print("GKS matrix is not positive semidefinite: not completely positive "
              "(|m|^2 <= n(n+1) violated)")
        return EXIT_FAIL
    if not rep["bath_valid"]:
        print("bath invalid: " + str(validate_bath(cfg.bath)))
        return EXIT_FAIL
    return EXIT_OK


def _initial_state(cfg):
    if cfg.rho0 is not None:
        return cfg.rho0
    return basis_projector(cfg.dimension, cfg.dimension - 1)


def write_trajectory_csv(fh, traj, observables):
    """Columns t, tr_rho, herm_residual, min_eig, pop_k..., then named observables."""
    d = traj.states[0].shape[0]
    pops = traj.populations()
    obs = {name: traj.expectation(X) for name, X in observables.items()}
    writer = csv.writer(fh)
    writer.writerow(["t", "tr_rho", "herm_residual", "min_eig"]
                    + [f"pop_{k}" for k in range(d)] + list(obs))
    for i, t in enumerate(traj.times):
        row = [t, traj.trace[i].real, traj.herm_residual[i], traj.min_eig[i]]
        row += list(pops[i]) + [obs[name][i] for name in obs]
        writer.writerow([fmt(v) for v in row])


def cmd_evolve(cfg, args):
    model = cfg.model().validated()
    traj = evolve_density(model, _initial_state(cfg), cfg.run["t_max"], cfg.run["steps"])
    with _Output(args.output) as fh:
        write_trajectory_csv(fh, traj, cfg.observables)
    return EXIT_OK


def _oracle_config(cfg):
    return OracleConfig(
        model=cfg.model().validated(),
        dt=cfg.run["dt"],
        T=cfg.run["t_max"],
        fock_dim=cfg.run["fock_dim"],
        rho0=_initial_state(cfg),
    )


def write_oracle_csv(fh, result):
    d = result.trajectory.states[0].shape[0]
    writer = csv.writer(fh)
    writer.writerow(["t", "trace_distance", "oracle_tr"]
                    + [f"oracle_pop_{k}" for k in range(d)]
                    + [f"master_pop_{k}" for k in range(d)])
    op = result.trajectory.populations()
    mp = result.reference.populations()
    for i, t in enumerate(result.trajectory.times):
        row = [t, result.comparison[i], result.trajectory.trace[i].real, *op[i], *mp[i]]
        writer.writerow([fmt(v) for v in row])


def write_convergence_csv(fh, study):
    ratios = [float("nan")] + convergence_ratios(study)
    writer = csv.writer(fh)
    writer.writerow(["dt", "max_trace_distance", "ratio_to_previous"])
    for (dt, err), r in zip(study, ratios):
        writer.writerow([fmt(dt), fmt(err), fmt(r)])


def cmd_oracle(cfg, args):
    ocfg = _oracle_config(cfg)
    result = run_oracle(ocfg)
    with _Output(args.output) as fh:
        write_oracle_csv(fh, result)
    study = convergence_study(ocfg, cfg.run["halvings"], workers=args.workers)
    if args.output:
        out = Path(args.output)
        conv_path = out.with_name(out.stem + "_convergence.csv")
        with open(conv_path, "w", newline="") as fh:
            write_convergence_csv(fh, study)
        print(f"max trace distance {result.max_distance:.3e}; convergence table in {conv_path}")
    else:
        write_convergence_csv(sys.stdout, study)
    return EXIT_OK


def cmd_check(cfg, args):
    results = checks.run_all(cfg)
    for r in results:
        print(r)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


HANDLERS = {
    "validate": cmd_validate,
    "convert": cmd_convert,
    "generator": cmd_generator,
    "evolve": cmd_evolve,
    "oracle": cmd_oracle,
    "check": cmd_check,
}


def build_parser():
    p = argparse.ArgumentParser(prog="gaussqsde", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="JSON model configuration")
    p.add_argument("--t-max", type=float, help="override run.t_max")
    p.add_argument("--steps", type=int, help="override run.steps")
    p.add_argument("--dt", type=float, help="override run.dt (oracle step)")
    p.add_argument("--fock-dim", type=int, help="override run.fock_dim")
    p.add_argument("--output", help="output file (CSV for evolve/oracle, JSON for convert/generator)")
    p.add_argument("--workers", type=int, default=1, help="processes for the convergence study")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for key in ("t_max", "steps", "dt", "fock_dim"):
        v = getattr(args, key)
        if v is not None:
            cfg.run[key] = v
    try:
        return HANDLERS[args.command](cfg, args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
