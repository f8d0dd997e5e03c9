"""Reduced Markov generator of a system driven by a Gaussian white-noise bath.

For coupling ``C``, free Hamiltonian ``F`` and bath (gamma, sigma, n, m, alpha)
the damping operator is

    G = i(F + alpha* C + alpha C^+) + kappa K,
    K = (n+1) C^+C + n CC^+ + m* CC + m C^+C^+,

and the Heisenberg generator is

    L(X) = gamma{(n+1) C^+XC + n CXC^+ + m C^+XC^+ + m* CXC} - XG - G^+X.

The squeezing moment multiplies C^+XC^+ (not CXC): that placement is the one
consistent with dA dA = gamma m dt, with trace preservation of the dual and
with the doubled two-channel vacuum representation.
"""
from dataclasses import dataclass

import numpy as np

from .bath import GaussianBathParams, doubling_coefficients, require_valid_bath
from .errors import ValidationError
from .operator_core import (
    HERMITIAN_TOL,
    Superoperator,
    as_operator,
    dag,
    hermiticity_residual,
    spost,
    spre,
    sprepost,
)


@dataclass(frozen=True)
class GaussianModel:
    C: np.ndarray
    F: np.ndarray
    bath: GaussianBathParams

    def __post_init__(self):
        C = as_operator(self.C, "C")
        F = as_operator(self.F, "F")
        if C.shape != F.shape:
            raise ValidationError(f"C and F dimensions differ: {C.shape} vs {F.shape}")
        res = hermiticity_residual(F)
        if res > HERMITIAN_TOL:
            raise ValidationError(f"F must be self-adjoint (residual {res:.3e})")
        C.setflags(write=False)
        F.setflags(write=False)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "F", F)

    @property
    def dim(self):
        return self.C.shape[0]

    def validated(self):
        require_valid_bath(self.bath)
        return self


def dissipation_operator(model):
    """K = (n+1)C^+C + nCC^+ + m*CC + mC^+C^+ (Hermitian)."""
    C, b = model.C, model.bath
    Cd = dag(C)
    return (b.n + 1) * Cd @ C + b.n * C @ Cd + np.conj(b.m) * C @ C + b.m * Cd @ Cd


def build_G(model):
    model.validated()
    C, b = model.C, model.bath
    drive = model.F + np.conj(b.alpha) * C + b.alpha * dag(C)
    return 1j * drive + b.kappa * dissipation_operator(model)


def _jump_heisenberg(model):
    C, b = model.C, model.bath
    Cd = dag(C)
    return b.gamma * (
        (b.n + 1) * sprepost(Cd, C)
        + b.n * sprepost(C, Cd)
        + b.m * sprepost(Cd, Cd)
        + np.conj(b.m) * sprepost(C, C)
    )


def heisenberg_generator(model):
    """Superoperator X -> L(X) acting on observables."""
    G = build_G(model)
    M = _jump_heisenberg(model) - spost(G) - spre(dag(G))
    return Superoperator(model.dim, M)


def schrodinger_generator(model):
    """The dual map rho -> L'(rho) with tr(rho L(X)) = tr(L'(rho) X)."""
    model.validated()
    C, b = model.C, model.bath
    Cd = dag(C)
    G = build_G(model)
    jumps = b.gamma * (
        (b.n + 1) * sprepost(C, Cd)
        + b.n * sprepost(Cd, C)
        + b.m * sprepost(Cd, Cd)
        + np.conj(b.m) * sprepost(C, C)
    )
    return Superoperator(model.dim, jumps - spre(G) - spost(dag(G)))


def gks_matrix(model):
    """Coefficient matrix of the jump part over the ordered family (C, C^+).

    Positive semidefinite exactly when |m|^2 <= n(n+1); the bath constraint is
    deliberately not enforced here.
    """
    b = model.bath
    g = b.gamma
    return np.array(
        [[g * (b.n + 1), g * b.m], [g * np.conj(b.m), g * b.n]], dtype=complex
    )


def gks_is_psd(model, tol=1e-12):
    Gam = gks_matrix(model)
    return bool(np.min(np.linalg.eigvalsh(Gam)) >= -tol * max(1.0, np.max(np.abs(Gam))))


def doubled_channels(model):
    """Two vacuum channels (K1, K2) and effective Hamiltonian equivalent to the Gaussian bath."""
    model.validated()
    C, b = model.C, model.bath
    xyz = doubling_coefficients(b)
    K1 = xyz.x * C
    K2 = np.conj(xyz.z) * C + xyz.y * dag(C)
    Heff = model.F + np.conj(b.alpha) * C + b.alpha * dag(C) + b.sigma * dissipation_operator(model)
    return K1, K2, Heff


def lindblad_heisenberg(H, jumps, rate=1.0):
    """Standard Heisenberg-picture Lindbladian rate * sum_k (K^+XK - {K^+K, X}/2) + i[H, X]."""
    H = as_operator(H, "H")
    d = H.shape[0]
    M = 1j * spre(H) - 1j * spost(H)
    for K in jumps:
        Kd = dag(K)
        KdK = Kd @ K
        M = M + rate * (sprepost(Kd, K) - 0.5 * spre(KdK) - 0.5 * spost(KdK))
    return Superoperator(d, M)


def doubled_generator(model):
    K1, K2, Heff = doubled_channels(model)
    return lindblad_heisenberg(Heff, (K1, K2), rate=model.bath.gamma)


@dataclass(frozen=True)
class GaussianGenerator:
    G: np.ndarray
    heisenberg: Superoperator
    schrodinger: Superoperator
    gks: np.ndarray


def build_generator(model):
    return GaussianGenerator(
        G=build_G(model),
        heisenberg=heisenberg_generator(model),
        schrodinger=schrodinger_generator(model),
        gks=gks_matrix(model),
    )


def vacuum_generator(Lc):
    """Vacuum-expectation Heisenberg generator of normal-ordered QSDE coefficients.

    X -> L00^+ X + X L00 + gamma L10^+ X L10, the dt part of d(V^+ X V) in the
    vacuum state.
    """
    return Superoperator(
        Lc.dim,
        spre(dag(Lc.L00)) + spost(Lc.L00) + Lc.gamma * sprepost(dag(Lc.L10), Lc.L10),
    )
