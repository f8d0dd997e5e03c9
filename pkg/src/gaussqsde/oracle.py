"""Repeated-interaction (collision model) reference simulation.

Each time step couples the system to a fresh pair of truncated bosonic
modes prepared in the vacuum.  The pair realizes the Gaussian bath through
the doubling ``b = x b1 + y b2^+ + z b2``; the step increment of the noise
is ``B = sqrt(gamma dt) b + alpha dt`` and the step unitary is

    U = exp(-i (C (x) B^+ + C^+ (x) B + dt F (x) 1)).

Tracing the modes out after every step gives a CPTP map that converges to
the master equation at first order in dt.  Only sigma = 0 is supported: the
symmetric per-step discretization has no room for the imaginary part of kappa.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .bath import doubling_coefficients
from .errors import ValidationError
from .evolution import Trajectory, evolve_density
from .operator_core import (
    basis_projector,
    dag,
    destroy,
    identity,
    kron,
    matrix_exponential,
    partial_trace,
    require_density,
    trace_distance,
)

DT_GAMMA_MAX = 0.1


@dataclass(frozen=True)
class OracleConfig:
    """Discretization of the collision model.

    ``rho0`` defaults to the top basis state (the fully excited level).
    """

    model: object
    dt: float
    T: float
    fock_dim: int = 4
    rho0: np.ndarray = field(default=None)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValidationError(f"dt must be > 0, got {self.dt}")
        if not self.T >= 0:
            raise ValidationError(f"T must be >= 0, got {self.T}")
        if int(self.fock_dim) != self.fock_dim or self.fock_dim < 2:
            raise ValidationError(f"fock_dim must be an integer >= 2, got {self.fock_dim}")
        if self.model.bath.sigma != 0:
            raise ValidationError(
                "the collision oracle requires sigma = 0 (kappa must be real)"
            )
        self.model.validated()
        d = self.model.dim
        rho0 = basis_projector(d, d - 1) if self.rho0 is None else self.rho0
        rho0 = require_density(rho0, "rho0")
        if rho0.shape[0] != d:
            raise ValidationError(f"rho0 has dim {rho0.shape[0]}, model has dim {d}")
        rho0.setflags(write=False)
        object.__setattr__(self, "rho0", rho0)
        object.__setattr__(self, "fock_dim", int(self.fock_dim))

    @property
    def steps(self):
        n = int(round(self.T / self.dt))
        if abs(n * self.dt - self.T) > 1e-9 * max(1.0, self.T):
            raise ValidationError(f"T={self.T} is not an integer multiple of dt={self.dt}")
        return n


@dataclass(frozen=True)
class OracleResult:
    trajectory: Trajectory
    reference: Trajectory
    max_trace_error: float
    comparison: np.ndarray

    @property
    def max_distance(self):
        return float(np.max(self.comparison))

    @property
    def final_distance(self):
        return float(self.comparison[-1])


def noise_increment(cfg):
    """B = sqrt(gamma dt)(x b1 + y b2^+ + z b2) + alpha dt on mode1 (x) mode2."""
    b = cfg.model.bath
    k = cfg.fock_dim
    a = destroy(k)
    one = identity(k)
    b1 = kron(a, one)
    b2 = kron(one, a)
    xyz = doubling_coefficients(b)
    B = np.sqrt(b.gamma * cfg.dt) * (xyz.x * b1 + xyz.y * dag(b2) + xyz.z * b2)
    return B + b.alpha * cfg.dt * identity(k * k)


def step_unitary(cfg):
    C, F = cfg.model.C, cfg.model.F
    B = noise_increment(cfg)
    n_anc = B.shape[0]
    h = kron(C, dag(B)) + kron(dag(C), B) + cfg.dt * kron(F, identity(n_anc))
    return matrix_exponential(-1j * h)


def ancilla_vacuum(cfg):
    return basis_projector(cfg.fock_dim ** 2, 0)


def run_oracle(cfg):
    """Iterate the collision map and compare with the master equation at every step."""
    b = cfg.model.bath
    if cfg.dt * b.gamma > DT_GAMMA_MAX:
        raise ValidationError(
            f"dt*gamma = {cfg.dt * b.gamma:g} exceeds {DT_GAMMA_MAX}; refine the step"
        )
    steps = cfg.steps
    U = step_unitary(cfg)
    Ud = dag(U)
    vac = ancilla_vacuum(cfg)
    d = cfg.model.dim
    dims = (d, vac.shape[0])

    rho = cfg.rho0.copy()
    states = [rho]
    for _ in range(steps):
        big = U @ np.kron(rho, vac) @ Ud
        rho = partial_trace(big, dims, keep="first")
        states.append(rho)
    times = np.arange(steps + 1) * cfg.dt
    traj = Trajectory(times, states)
    reference = evolve_density(cfg.model, cfg.rho0, cfg.T, max(steps, 1)) if steps else Trajectory(
        times, [cfg.rho0]
    )
    comparison = np.array(
        [trace_distance(0.5 * (r + dag(r)), s) for r, s in zip(traj.states, reference.states)]
    )
    return OracleResult(
        trajectory=traj,
        reference=reference,
        max_trace_error=traj.max_trace_error(),
        comparison=comparison,
    )


def _max_distance(cfg):
    return cfg.dt, run_oracle(cfg).max_distance


def convergence_study(cfg, halvings, workers=None):
    """Run the oracle at dt, dt/2, ..., dt/2**halvings.

    Returns a list of ``(dt, max trace distance to the master equation)``.
    Points are independent; ``workers > 1`` runs them in a process pool.
    """
    halvings = int(halvings)
    if not 0 <= halvings <= 4:
        raise ValidationError(f"halvings must be in [0, 4], got {halvings}")
    cfgs = [replace(cfg, dt=cfg.dt / 2 ** k) for k in range(halvings + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_max_distance, cfgs))
    return [_max_distance(c) for c in cfgs]


def convergence_ratios(study):
    errs = [e for _, e in study]
    return [e1 / e2 for e1, e2 in zip(errs, errs[1:])]
