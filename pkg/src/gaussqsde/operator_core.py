"""Dense complex linear algebra shared by every other module.

Operators are plain ``numpy`` complex arrays of shape ``(d, d)``.  Superoperators
act on column-stacked operators, i.e. ``vec(X) = X.reshape(-1, order="F")`` and

    vec(A @ X @ B) == kron(B.T, A) @ vec(X).
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ValidationError

HERMITIAN_TOL = 1e-10


def as_operator(A, name="operator"):
    """Return `A` as a finite square complex array, raising ValidationError otherwise."""
    A = np.array(A, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValidationError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValidationError(f"{name} has non-finite entries")
    return A


def dag(A):
    return np.conj(np.transpose(A))


def identity(d):
    return np.eye(d, dtype=complex)


def hermiticity_residual(A):
    """Largest entrywise deviation |A - A^dagger|."""
    A = np.asarray(A)
    return float(np.max(np.abs(A - dag(A)))) if A.size else 0.0


def is_hermitian(A, tol=HERMITIAN_TOL):
    return hermiticity_residual(A) <= tol


def require_hermitian(A, name="operator", tol=HERMITIAN_TOL):
    res = hermiticity_residual(A)
    if res > tol:
        raise ValidationError(f"{name} is not Hermitian (residual {res:.3e} > {tol:g})")


def op_norm(A):
    """Spectral (operator) norm."""
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def vec(X):
    """Column-stack an operator into a vector."""
    return np.asarray(X).reshape(-1, order="F")


def unvec(v, d):
    return np.asarray(v).reshape((d, d), order="F")


def spre(A):
    """Superoperator X -> A X."""
    d = A.shape[0]
    return np.kron(np.eye(d), A)


def spost(B):
    """Superoperator X -> X B."""
    d = B.shape[0]
    return np.kron(B.T, np.eye(d))


def sprepost(A, B):
    """Superoperator X -> A X B."""
    return np.kron(B.T, A)


@dataclass(frozen=True)
class Superoperator:
    """A linear map on d x d operators stored as a d^2 x d^2 matrix.

    Calling the object applies it to an operator.
    """

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=complex)
        if M.shape != (self.dim ** 2, self.dim ** 2):
            raise ValidationError(
                f"superoperator matrix must be {self.dim ** 2}x{self.dim ** 2}, got {M.shape}"
            )
        if not np.all(np.isfinite(M)):
            raise ValidationError("superoperator has non-finite entries")
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    def __call__(self, X):
        return unvec(self.matrix @ vec(X), self.dim)

    def __sub__(self, other):
        return Superoperator(self.dim, self.matrix - other.matrix)

    def __add__(self, other):
        return Superoperator(self.dim, self.matrix + other.matrix)

    def norm(self):
        """Frobenius norm of the matrix representation."""
        return float(np.linalg.norm(self.matrix))

    def eigenvalues(self):
        return np.linalg.eigvals(self.matrix)


def matrix_exponential(A):
    """exp(A) by scaling and squaring with Pade approximants (scipy)."""
    A = as_operator(A, "matrix_exponential argument")
    return scipy.linalg.expm(A)


def kron(*ops):
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, op)
    return out


def partial_trace(AB, dims, keep="first"):
    """Trace out one factor of a bipartite operator on C^dA (x) C^dB.

    Parameters
    ----------
    AB : array_like
        Operator of dimension ``dA * dB``; the first factor is the slow index.
    dims : tuple of int
        ``(dA, dB)``.
    keep : {"first", "second"}
        Which factor survives.
    """
    AB = as_operator(AB, "partial_trace argument")
    d_a, d_b = (int(x) for x in dims)
    if d_a < 1 or d_b < 1 or AB.shape[0] != d_a * d_b:
        raise ValidationError(
            f"partial_trace: operator of dim {AB.shape[0]} does not factor as {d_a}x{d_b}"
        )
    T = AB.reshape(d_a, d_b, d_a, d_b)
    if keep == "first":
        return np.einsum("ijkj->ik", T)
    if keep == "second":
        return np.einsum("ijil->jl", T)
    raise ValidationError(f"keep must be 'first' or 'second', got {keep!r}")


def trace_distance(rho, sigma):
    """Half the trace norm of ``rho - sigma`` for Hermitian arguments."""
    rho = as_operator(rho, "rho")
    sigma = as_operator(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValidationError(f"trace_distance: shapes differ {rho.shape} vs {sigma.shape}")
    require_hermitian(rho, "rho")
    require_hermitian(sigma, "sigma")
    diff = rho - sigma
    diff = 0.5 * (diff + dag(diff))
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def require_density(rho, name="rho", tol=HERMITIAN_TOL):
    """Validate a density matrix: Hermitian, PSD and unit trace within `tol`."""
    rho = as_operator(rho, name)
    require_hermitian(rho, name, tol)
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise ValidationError(f"{name} must have unit trace, got {tr:.6g}")
    lo = float(np.min(np.linalg.eigvalsh(0.5 * (rho + dag(rho)))))
    if lo < -tol:
        raise ValidationError(f"{name} is not positive semidefinite (min eigenvalue {lo:.3e})")
    return rho


# Common qubit operators in the (ground, excited) = (|0>, |1>) basis.
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.T.copy()
SIGMA_Z = np.array([[-1, 0], [0, 1]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def destroy(n):
    """Truncated bosonic annihilator on span{|0>, ..., |n-1>}."""
    return np.diag(np.sqrt(np.arange(1, n)), k=1).astype(complex)


def basis_projector(d, k):
    P = np.zeros((d, d), dtype=complex)
    P[k, k] = 1.0
    return P
