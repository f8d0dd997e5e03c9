"""Three presentations of one constant-coefficient stochastic evolution.

* time-ordered: ``dU/dt = -i E_ij [a_t^+]^i [a_t^-]^j U`` (a stochastic Hamiltonian)
* normal-ordered: ``dV/dt = L_ij [a_t^+]^i V [a_t^-]^j``
* Hudson-Parthasarathy: unitary ``W``, self-adjoint ``H``, arbitrary ``L``

Index 1 on the left of a pair marks a creator, index 1 on the right an
annihilator.  Conversion between the time- and normal-ordered forms comes
from moving annihilators through U with the rule
``a_t^- U = (1 + i kappa E11)^-1 (U a_t^- - i kappa E10 U)``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import InconsistencyError, NotUnitaryError, SingularityError, ValidationError
from .operator_core import as_operator, dag, hermiticity_residual, identity, op_norm

COND_LIMIT = 1e12
UNITARY_TOL = 1e-10
ROUNDTRIP_TOL = 1e-8


def _frozen(A, name):
    A = as_operator(A, name)
    A.setflags(write=False)
    return A


def _common_dim(named):
    dims = {name: A.shape[0] for name, A in named.items()}
    if len(set(dims.values())) != 1:
        raise ValidationError(f"coefficient dimensions differ: {dims}")
    return next(iter(dims.values()))


@dataclass(frozen=True)
class TimeOrderedCoeffs:
    E11: np.ndarray
    E10: np.ndarray
    E01: np.ndarray
    E00: np.ndarray
    kappa: complex

    def __post_init__(self):
        named = {}
        for name in ("E11", "E10", "E01", "E00"):
            named[name] = _frozen(getattr(self, name), name)
            object.__setattr__(self, name, named[name])
        _common_dim(named)
        object.__setattr__(self, "kappa", complex(self.kappa))
        if not np.isfinite(self.kappa):
            raise ValidationError("kappa must be finite")

    @property
    def dim(self):
        return self.E11.shape[0]

    @property
    def gamma(self):
        return 2.0 * self.kappa.real

    def hermitian_residual(self):
        """How far the stochastic Hamiltonian is from being self-adjoint."""
        return max(
            hermiticity_residual(self.E11),
            hermiticity_residual(self.E00),
            float(np.max(np.abs(dag(self.E10) - self.E01))),
        )

    def is_hermitian(self, tol=1e-10):
        return self.hermitian_residual() <= tol

    @classmethod
    def from_hamiltonian(cls, C, F, kappa):
        """Coefficients of ``C a^+ + C^dagger a^- + F``."""
        C = as_operator(C, "C")
        return cls(np.zeros_like(C), C, dag(C), F, kappa)


@dataclass(frozen=True)
class NormalOrderedCoeffs:
    L11: np.ndarray
    L10: np.ndarray
    L01: np.ndarray
    L00: np.ndarray
    gamma: float

    def __post_init__(self):
        named = {}
        for name in ("L11", "L10", "L01", "L00"):
            named[name] = _frozen(getattr(self, name), name)
            object.__setattr__(self, name, named[name])
        _common_dim(named)
        object.__setattr__(self, "gamma", float(self.gamma))
        if not self.gamma > 0:
            raise ValidationError(f"gamma must be > 0, got {self.gamma}")

    @property
    def dim(self):
        return self.L11.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return getattr(self, f"L{i}{j}")


@dataclass(frozen=True)
class HPParams:
    W: np.ndarray
    H: np.ndarray
    L: np.ndarray
    gamma: float

    def __post_init__(self):
        named = {}
        for name in ("W", "H", "L"):
            named[name] = _frozen(getattr(self, name), name)
            object.__setattr__(self, name, named[name])
        d = _common_dim(named)
        object.__setattr__(self, "gamma", float(self.gamma))
        if not self.gamma > 0:
            raise ValidationError(f"gamma must be > 0, got {self.gamma}")
        w_res = op_norm(dag(self.W) @ self.W - identity(d))
        if w_res > UNITARY_TOL:
            raise ValidationError(f"W is not unitary (|W^+W - 1| = {w_res:.3e})")
        h_res = op_norm(self.H - dag(self.H))
        if h_res > UNITARY_TOL:
            raise ValidationError(f"H is not self-adjoint (|H - H^+| = {h_res:.3e})")

    @property
    def dim(self):
        return self.W.shape[0]


def _cayley_inverse(E11, kappa):
    d = E11.shape[0]
    M = identity(d) + 1j * kappa * E11
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularityError(
            f"1 + i*kappa*E11 is singular (condition number {cond:.3e} > {COND_LIMIT:g})",
            cond,
        )
    # LU with partial pivoting
    return np.linalg.solve(M, identity(d))


def time_to_normal(E):
    """Normal-ordered coefficients equivalent to a time-ordered stochastic Hamiltonian."""
    kappa = E.kappa
    Minv = _cayley_inverse(E.E11, kappa)
    return NormalOrderedCoeffs(
        L11=-1j * E.E11 @ Minv,
        L10=-1j * Minv @ E.E10,
        L01=-1j * E.E01 @ Minv,
        L00=-1j * E.E00 - kappa * E.E01 @ Minv @ E.E10,
        gamma=E.gamma,
    )


def unitarity_residual(Lc):
    """max_ij || L_ij + L_ji^+ + gamma L_1i^+ L_1j ||; zero iff the evolution is unitary."""
    worst = 0.0
    for i in (0, 1):
        for j in (0, 1):
            R = Lc[i, j] + dag(Lc[j, i]) + Lc.gamma * dag(Lc[1, i]) @ Lc[1, j]
            worst = max(worst, op_norm(R))
    return worst


def hp_to_normal(h):
    g = h.gamma
    d = h.dim
    Ld = dag(h.L)
    return NormalOrderedCoeffs(
        L11=(h.W - identity(d)) / g,
        L10=h.L,
        L01=-Ld @ h.W,
        L00=-0.5 * g * Ld @ h.L - 1j * h.H,
        gamma=g,
    )


def normal_to_hp(Lc):
    """Read (W, H, L) off unitary normal-ordered coefficients.

    Raises NotUnitaryError when the unitarity residual exceeds 1e-8 and
    InconsistencyError when one of the parametrizing identities fails.
    """
    res = unitarity_residual(Lc)
    if res > ROUNDTRIP_TOL:
        raise NotUnitaryError(f"coefficients are not unitary (residual {res:.3e} > {ROUNDTRIP_TOL:g})")
    g = Lc.gamma
    d = Lc.dim
    W = identity(d) + g * Lc.L11
    L = Lc.L10.copy()
    H = 1j * (Lc.L00 + 0.5 * g * dag(L) @ L)
    h_res = op_norm(H - dag(H))
    if h_res > ROUNDTRIP_TOL:
        raise InconsistencyError(f"L00 + gamma/2 L^+L is not anti-Hermitian (|H - H^+| = {h_res:.3e})")
    l01_res = op_norm(Lc.L01 + dag(L) @ W)
    if l01_res > ROUNDTRIP_TOL:
        raise InconsistencyError(f"L01 != -L^+ W (residual {l01_res:.3e})")
    # symmetrize away roundoff so HPParams validation sees exact structure
    H = 0.5 * (H + dag(H))
    u, _, vh = np.linalg.svd(W)
    w_res = op_norm(dag(W) @ W - identity(d))
    if w_res > ROUNDTRIP_TOL:
        raise InconsistencyError(f"W = 1 + gamma L11 is not unitary (residual {w_res:.3e})")
    W = u @ vh
    return HPParams(W=W, H=H, L=L, gamma=g)
