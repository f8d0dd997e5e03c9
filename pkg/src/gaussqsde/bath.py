"""Single-mode Gaussian bath: parameters, doubling coefficients, Ito table,
characteristic function.

A bath is described by the damping rate ``gamma``, a Hamiltonian shift
``sigma`` (together ``kappa = gamma/2 + i*sigma``), the occupation ``n``,
the squeezing moment ``m`` and the displacement ``alpha``.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

M_TOL = 1e-9


@dataclass(frozen=True)
class GaussianBathParams:
    gamma: float
    sigma: float = 0.0
    n: float = 0.0
    m: complex = 0j
    alpha: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "n", float(self.n))
        object.__setattr__(self, "m", complex(self.m))
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def kappa(self):
        return complex(0.5 * self.gamma, self.sigma)

    @classmethod
    def vacuum(cls, gamma=1.0, sigma=0.0):
        return cls(gamma=gamma, sigma=sigma)

    @classmethod
    def thermal(cls, n, gamma=1.0, sigma=0.0):
        return cls(gamma=gamma, sigma=sigma, n=n)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "all constraints satisfied"
        return "\n".join(self.violations)


def validate_bath(p):
    """List every violated bath constraint; an empty report means valid."""
    violations = []
    values = {"gamma": p.gamma, "sigma": p.sigma, "n": p.n, "m": p.m, "alpha": p.alpha}
    for name, v in values.items():
        if not cmath.isfinite(v):
            violations.append(f"{name} is not finite ({v})")
    if violations:
        return ValidationReport(tuple(violations))
    if not p.gamma > 0:
        violations.append(f"gamma must be > 0, got gamma={p.gamma:g}")
    if p.n < 0:
        violations.append(f"n must be >= 0, got n={p.n:g}")
    bound = max(p.n, 0.0) * (max(p.n, 0.0) + 1.0)
    m2 = abs(p.m) ** 2
    if m2 > bound + M_TOL:
        violations.append(
            f"squeezing violates |m|^2 <= n(n+1): |m|^2={m2:.6g} > n(n+1)={bound:.6g}"
        )
    return ValidationReport(tuple(violations))


def require_valid_bath(p):
    report = validate_bath(p)
    if not report.ok:
        raise ValidationError("invalid bath: " + "; ".join(report.violations))
    return p


@dataclass(frozen=True)
class DoublingCoefficients:
    """Coefficients of ``a = x a1 + y a2^dagger + z a2 + alpha`` on two vacua."""

    x: complex
    y: complex
    z: complex

    def ccr_residual(self):
        return abs(abs(self.x) ** 2 - abs(self.y) ** 2 + abs(self.z) ** 2 - 1.0)


def doubling_coefficients(p):
    """Return (x, y, z) with |x|^2+|z|^2 = n+1, |y|^2 = n and y*z = m."""
    require_valid_bath(p)
    if p.n <= 0.0:
        return DoublingCoefficients(1.0 + 0j, 0j, 0j)
    m = p.m
    bound = math.sqrt(p.n * (p.n + 1.0))
    if abs(m) > bound:
        # inside the M_TOL slack: pull m onto the boundary so z stays bounded as n -> 0
        m = m * (bound / abs(m))
    root_n = math.sqrt(p.n)
    z = m / root_n
    # x from z itself (|m|^2 can underflow for tiny n); clip the rounding at maximal squeezing
    x2 = max(p.n + 1.0 - abs(z) ** 2, 0.0)
    return DoublingCoefficients(complex(math.sqrt(x2)), complex(root_n), z)


@dataclass(frozen=True)
class ItoTable:
    """Coefficients of dt in the products of the bath increments.

    ``dAdAd`` is dA dA^dagger, ``dAddA`` is dA^dagger dA and so on.
    """

    dAdAd: complex
    dAddA: complex
    dAddAd: complex
    dAdA: complex

    def as_matrix(self):
        """[[dA dA+, dA dA], [dA+ dA+, dA+ dA]] as a 2x2 array."""
        return np.array([[self.dAdAd, self.dAdA], [self.dAddAd, self.dAddA]], dtype=complex)


def ito_table(p):
    require_valid_bath(p)
    g = p.gamma
    return ItoTable(
        dAdAd=complex(g * (p.n + 1.0)),
        dAddA=complex(g * p.n),
        dAddAd=g * p.m.conjugate(),
        dAdA=g * p.m,
    )


def characteristic_function(p, zeta):
    """<exp(i zeta* a + i zeta a^dagger)> for the Gaussian state.

    The exponent is the one generated by the doubled vacuum, so that the
    cumulants are <a> = alpha, <a a^dagger> - |alpha|^2 = n + 1 and
    <a a> - alpha^2 = m.
    """
    require_valid_bath(p)
    zeta = complex(zeta)
    zc = zeta.conjugate()
    exponent = (
        -(p.n + 0.5) * abs(zeta) ** 2
        - 0.5 * (p.m * zc ** 2 + p.m.conjugate() * zeta ** 2)
        + 1j * zc * p.alpha
        + 1j * zeta * p.alpha.conjugate()
    )
    return cmath.exp(exponent)


# 5-point central stencil for a first derivative, error O(h^4)
_STENCIL = ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12))


def wirtinger_derivatives(fn, h=1e-3):
    """Finite-difference Wirtinger derivatives of `fn` at zeta = 0.

    Returns ``(f, d_z, d_zc, d_zc_zc, d_z_zc)`` where ``d_zc`` differentiates
    in zeta* and ``d_z_zc`` is the mixed second derivative.
    """
    def f(u, v):
        return fn(complex(u, v))

    def du(u, v):
        return sum(c * f(u + k * h, v) for k, c in _STENCIL) / h

    def dv(u, v):
        return sum(c * f(u, v + k * h) for k, c in _STENCIL) / h

    fu, fv = du(0.0, 0.0), dv(0.0, 0.0)
    fuu = sum(c * du(k * h, 0.0) for k, c in _STENCIL) / h
    fvv = sum(c * dv(0.0, k * h) for k, c in _STENCIL) / h
    fuv = sum(c * du(0.0, k * h) for k, c in _STENCIL) / h
    d_z = 0.5 * (fu - 1j * fv)
    d_zc = 0.5 * (fu + 1j * fv)
    d_zc_zc = 0.25 * (fuu - fvv + 2j * fuv)
    d_z_zc = 0.25 * (fuu + fvv)
    return f(0.0, 0.0), d_z, d_zc, d_zc_zc, d_z_zc


def moments_from_characteristic(p, h=1e-3):
    """Recover (alpha, n+1, m) from finite differences of the characteristic function.

    The second-order values are cumulants (centred moments); for alpha = 0
    they coincide with the raw moments <a a^dagger> and <a a>.
    """
    f0, d_z, d_zc, d_zc_zc, d_z_zc = wirtinger_derivatives(
        lambda z: characteristic_function(p, z), h
    )
    mean = -1j * d_zc / f0
    aa = -(d_zc_zc / f0 - (d_zc / f0) ** 2)
    aad = -(d_z_zc / f0 - (d_z / f0) * (d_zc / f0)) + 0.5
    return mean, aad, aa
