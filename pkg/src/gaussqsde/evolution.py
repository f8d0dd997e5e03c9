"""Master-equation and Heisenberg propagation, plus exponential-vector kernels."""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .generator import heisenberg_generator, schrodinger_generator
from .operator_core import (
    as_operator,
    dag,
    hermiticity_residual,
    identity,
    matrix_exponential,
    require_density,
    unvec,
    vec,
)

TRACE_TOL = 1e-10


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant complex function on [0, end).

    ``values[k]`` holds on ``[breakpoints[k], breakpoints[k+1])``, the last
    interval closing at ``end``.
    """

    breakpoints: tuple
    values: tuple
    end: float

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(complex(v) for v in self.values)
        end = float(self.end)
        if not bp or bp[0] != 0.0:
            raise ValidationError("breakpoints must start at 0")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])) or end <= bp[-1]:
            raise ValidationError("breakpoints must be strictly ascending and below end")
        if len(vals) != len(bp):
            raise ValidationError(f"need one value per interval: {len(bp)} breakpoints, {len(vals)} values")
        if not all(np.isfinite(v) for v in vals):
            raise ValidationError("step function values must be finite")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "end", end)

    @classmethod
    def constant(cls, value, end):
        return cls((0.0,), (value,), end)

    @classmethod
    def zero(cls, end):
        return cls.constant(0.0, end)

    def __call__(self, t):
        if t < 0 or t >= self.end:
            raise DomainError(f"t={t} outside [0, {self.end})")
        k = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return self.values[k]

    def segments(self, t):
        """(start, stop, value) pieces covering [0, t]."""
        if t > self.end:
            raise DomainError(f"step function defined on [0, {self.end}] only, requested t={t}")
        edges = list(self.breakpoints) + [self.end]
        out = []
        for a, b, v in zip(edges, edges[1:], self.values):
            if a >= t:
                break
            out.append((a, min(b, t), v))
        return out


def inner_product(f, g, t):
    """Integral of conj(f) g over [0, t]."""
    cuts = _merged_cuts(f, g, t)
    total = 0j
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        total += np.conj(f(mid)) * g(mid) * (b - a)
    return total


def _merged_cuts(f, g, t):
    if t < 0:
        raise DomainError(f"negative time {t}")
    for h in (f, g):
        if t > h.end:
            raise DomainError(f"step function defined on [0, {h.end}] only, requested t={t}")
    cuts = {0.0, float(t)}
    cuts.update(b for b in f.breakpoints if b < t)
    cuts.update(b for b in g.breakpoints if b < t)
    return sorted(cuts)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple
    trace: np.ndarray = field(default=None)
    herm_residual: np.ndarray = field(default=None)
    min_eig: np.ndarray = field(default=None)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if len(times) != len(self.states):
            raise ValidationError("times and states must have equal length")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))
        if self.trace is None:
            object.__setattr__(self, "trace", np.array([np.trace(s) for s in self.states]))
        if self.herm_residual is None:
            object.__setattr__(
                self, "herm_residual", np.array([hermiticity_residual(s) for s in self.states])
            )
        if self.min_eig is None:
            eigs = [np.min(np.linalg.eigvalsh(0.5 * (s + dag(s)))) for s in self.states]
            object.__setattr__(self, "min_eig", np.array(eigs))

    def __len__(self):
        return len(self.times)

    @property
    def final(self):
        return self.states[-1]

    def max_trace_error(self):
        return float(np.max(np.abs(self.trace - 1.0)))

    def expectation(self, X):
        """Real part of tr(state X) along the trajectory."""
        return np.array([np.real(np.trace(s @ X)) for s in self.states])

    def populations(self):
        return np.array([np.real(np.diag(s)) for s in self.states])


def build_liouvillian(model):
    """d^2 x d^2 matrix of the master-equation generator (column stacking)."""
    return schrodinger_generator(model)


def _propagate(sup, X0, T, steps):
    if T < 0:
        raise ValidationError(f"T must be >= 0, got {T}")
    if T == 0:
        return np.array([0.0]), [X0]
    steps = int(steps)
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    dt = T / steps
    P = matrix_exponential(dt * sup.matrix)
    v = vec(X0)
    states = [X0]
    for _ in range(steps):
        v = P @ v
        states.append(unvec(v, sup.dim))
    return np.linspace(0.0, T, steps + 1), states


def evolve_density(model, rho0, T, steps):
    """Density-matrix trajectory under the master equation on a uniform grid."""
    rho0 = require_density(rho0, "rho0")
    if rho0.shape[0] != model.dim:
        raise ValidationError(f"rho0 has dim {rho0.shape[0]}, model has dim {model.dim}")
    times, states = _propagate(build_liouvillian(model), rho0, T, steps)
    traj = Trajectory(times, states)
    err = traj.max_trace_error()
    if err > TRACE_TOL:
        raise ValidationError(f"trace drifted by {err:.3e} during propagation")
    return traj


def evolve_heisenberg(model, X0, T, steps):
    """Observable trajectory X_t = exp(t L) X0 in the Heisenberg picture."""
    X0 = as_operator(X0, "X0")
    if X0.shape[0] != model.dim:
        raise ValidationError(f"X0 has dim {X0.shape[0]}, model has dim {model.dim}")
    times, states = _propagate(heisenberg_generator(model), X0, T, steps)
    return Trajectory(times, states)


def kernel_evaluator(Lc, f, g, t):
    """Normalized exponential-vector kernel K_t(f, g) of a normal-ordered QSDE.

    K solves dK/dt = (L00 + conj(f) L10 + g L01 + conj(f) g L11) K with K_0 = 1
    and the full matrix element is <phi|K_t|psi> exp(gamma <f|g>).
    """
    cuts = _merged_cuts(f, g, t)
    K = identity(Lc.dim)
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        fb, gv = np.conj(f(mid)), g(mid)
        gen = Lc.L00 + fb * Lc.L10 + gv * Lc.L01 + fb * gv * Lc.L11
        K = matrix_exponential((b - a) * gen) @ K
    return K


def matrix_element(Lc, f, g, t, phi, psi):
    """<phi (x) e(f) | V_t psi (x) e(g)> over the interval [0, t]."""
    K = kernel_evaluator(Lc, f, g, t)
    return np.vdot(phi, K @ psi) * np.exp(Lc.gamma * inner_product(f, g, t))
