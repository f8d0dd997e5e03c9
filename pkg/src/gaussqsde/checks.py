"""Invariant suite run by ``gaussqsde check`` on a configured model."""
from dataclasses import dataclass

import numpy as np

from .bath import validate_bath
from .coeffs import (
    TimeOrderedCoeffs,
    hp_to_normal,
    normal_to_hp,
    time_to_normal,
    unitarity_residual,
)
from .errors import ValidationError
from .evolution import evolve_density
from .generator import (
    doubled_generator,
    gks_is_psd,
    heisenberg_generator,
    schrodinger_generator,
    vacuum_generator,
)
from .operator_core import basis_projector, identity


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float = float("nan")
    tol: float = float("nan")
    note: str = ""

    def __str__(self):
        tag = "PASS" if self.passed else "FAIL"
        detail = f" value={self.value:.3e} tol={self.tol:.1e}" if np.isfinite(self.value) else ""
        return f"{tag} {self.name}{detail}{(' ' + self.note) if self.note else ''}"


def _measured(name, value, tol):
    return CheckResult(name, bool(value <= tol), float(value), tol)


def random_density(d, rng):
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


def random_matrix(d, rng):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


def model_checks(model, rng, samples=20):
    """Generator identities for one model; tolerances scale with its norm."""
    d = model.dim
    Lh = heisenberg_generator(model)
    Ls = schrodinger_generator(model)
    scale = max(1.0, np.linalg.norm(Lh.matrix, 2))
    out = [_measured("unitality L(1)=0", np.abs(Lh(identity(d))).max(), 1e-11 * scale)]
    tr_err = dual_err = 0.0
    for _ in range(samples):
        rho, X = random_density(d, rng), random_matrix(d, rng) / np.sqrt(d)
        tr_err = max(tr_err, abs(np.trace(Ls(rho))))
        dual_err = max(dual_err, abs(np.trace(rho @ Lh(X)) - np.trace(Ls(rho) @ X)))
    out.append(_measured("trace preservation tr L'(rho)=0", tr_err, 1e-11 * scale))
    out.append(_measured("duality tr(rho L(X)) = tr(L'(rho) X)", dual_err, 1e-12 * scale))
    out.append(_measured(
        "doubled two-channel vacuum equivalence",
        (Lh - doubled_generator(model)).norm(),
        1e-10 * scale,
    ))
    b = model.bath
    if b.n == 0 and b.m == 0 and b.alpha == 0:
        E = TimeOrderedCoeffs.from_hamiltonian(model.C, model.F, b.kappa)
        res = (vacuum_generator(time_to_normal(E)) - Lh).norm()
        out.append(_measured("vacuum bath matches normal-ordered QSDE generator", res, 1e-10 * scale))
    return out


def presentation_checks(cfg):
    out = []
    Lc = cfg.normal_ordered()
    if cfg.presentation == "time_ordered" or cfg.presentation is None:
        E = cfg.time_ordered()
        if not E.is_hermitian():
            return [CheckResult("time-ordered coefficients Hermitian", False,
                                E.hermitian_residual(), 1e-10)]
    res = unitarity_residual(Lc)
    out.append(_measured("unitarity residual of coefficients", res, 1e-10))
    try:
        back = hp_to_normal(normal_to_hp(Lc))
    except ValidationError as exc:
        out.append(CheckResult("HP round trip", False, note=str(exc)))
        return out
    err = max(np.abs(back[i, j] - Lc[i, j]).max() for i in (0, 1) for j in (0, 1))
    out.append(_measured("HP round trip", err, 1e-8))
    return out


def evolution_checks(cfg, model):
    d = cfg.dimension
    rho0 = cfg.rho0 if cfg.rho0 is not None else basis_projector(d, d - 1)
    traj = evolve_density(model, rho0, cfg.run["t_max"], cfg.run["steps"])
    return [
        _measured("trace conserved along trajectory", traj.max_trace_error(), 1e-10),
        _measured("Hermiticity conserved along trajectory", float(traj.herm_residual.max()), 1e-10),
        _measured("positivity along trajectory (-min eigenvalue)", max(0.0, -traj.min_eig.min()), 1e-9),
    ]


def run_all(cfg, seed=0):
    rng = np.random.default_rng(seed)
    report = validate_bath(cfg.bath)
    results = [CheckResult("bath constraints", report.ok, note="" if report.ok else str(report))]
    try:
        model = cfg.model()
    except ValidationError as exc:
        return results + [CheckResult("model well-formed", False, note=str(exc))]
    results.append(CheckResult("GKS matrix positive semidefinite", gks_is_psd(model)))
    if not report.ok:
        return results
    results += model_checks(model, rng)
    results += presentation_checks(cfg)
    results += evolution_checks(cfg, model)
    return results
