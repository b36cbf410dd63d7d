"""Periodic pair-energy kernels.

All kernels are one-periodic and even. Arguments are reduced mod 1 before
evaluation, so the torus distance never has to be formed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateDistance
from .pointset import PointSet, wrap

LOGSIN = "logsin"
FOURIER = "fourier"
COSINE_SERIES = "cosine-series"

ONE_PLUS_FOURIER = "one-plus-fourier"
LOGSIN_PRODUCT = "logsin-product"

# distance below which the log-sine kernel is treated as singular
SINGULAR_EPS = 1e-15


@dataclass(frozen=True)
class EnergyKernel:
    """One-periodic symmetric pair energy.

    ``variant`` is ``"logsin"`` (``offset - ln(2 sin(pi t))``), ``"fourier"``
    (``offset + sum_{k<=M} cos(2 pi k t)/k``) or ``"cosine-series"``
    (``offset + sum_k c_k cos(2 pi k t)`` with ``c_k >= 0``).
    """

    variant: str = LOGSIN
    M: int | None = None
    coefficients: tuple = ()
    offset: float | None = None

    def __post_init__(self):
        if self.variant not in (LOGSIN, FOURIER, COSINE_SERIES):
            raise ValueError(f"unknown kernel variant {self.variant!r}")
        if self.variant == FOURIER and (self.M is None or self.M < 1):
            raise ValueError("truncated Fourier kernel needs M >= 1")
        if self.variant == COSINE_SERIES:
            coef = tuple(float(c) for c in self.coefficients)
            if not coef:
                raise ValueError("cosine-series kernel needs at least one coefficient")
            if any(c < 0 for c in coef):
                raise ValueError("cosine-series coefficients must be nonnegative")
            object.__setattr__(self, "coefficients", coef)
        if self.offset is None:
            object.__setattr__(self, "offset", 1.0 if self.variant == LOGSIN else 0.0)

    @property
    def singular(self):
        return self.variant == LOGSIN

    @property
    def degree(self):
        """Trigonometric degree, or None for the log-sine kernel."""
        if self.variant == FOURIER:
            return self.M
        if self.variant == COSINE_SERIES:
            return len(self.coefficients)
        return None

    def spectrum(self):
        """Cosine coefficients ``c_1..c_M`` of a finite kernel."""
        if self.variant == FOURIER:
            return 1.0 / np.arange(1, self.M + 1)
        if self.variant == COSINE_SERIES:
            return np.asarray(self.coefficients)
        raise ValueError("the log-sine kernel has no finite spectrum")

    def with_degree(self, M):
        """Same kernel truncated at degree ``M`` (truncated Fourier only)."""
        if self.variant != FOURIER:
            return self
        return EnergyKernel(FOURIER, M=M, offset=self.offset)

    def __call__(self, t):
        if self.variant == LOGSIN:
            return eval_logsin(t, self.offset)
        if self.variant == FOURIER:
            return self.offset + eval_truncated_fourier(t, self.M)
        return self.offset + eval_cosine_series(t, self.coefficients)

    def derivative(self, t):
        """d/dt of the kernel."""
        if self.variant == LOGSIN:
            t = _check_nonsingular(t)
            return -np.pi / np.tan(np.pi * t)
        c = self.spectrum()
        return _cos_series_derivative(t, c)


@dataclass(frozen=True)
class ProductKernelSpec:
    """Per-axis product kernel in dimension ``dim``.

    ``form="one-plus-fourier"`` multiplies ``1 + sum_{k<=M} cos(2 pi k t_j)/k``
    over the axes; ``form="logsin-product"`` multiplies ``1 - ln(2 sin(pi t_j))``.
    """

    dim: int
    form: str = ONE_PLUS_FOURIER
    M: int | None = None
    base: EnergyKernel = field(init=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.form == ONE_PLUS_FOURIER:
            base = EnergyKernel(FOURIER, M=self.M if self.M is not None else 1, offset=1.0)
        elif self.form == LOGSIN_PRODUCT:
            base = EnergyKernel(LOGSIN, offset=1.0)
        else:
            raise ValueError(f"unknown product form {self.form!r}")
        object.__setattr__(self, "base", base)

    @property
    def singular(self):
        return self.form == LOGSIN_PRODUCT

    def with_degree(self, M):
        if self.form != ONE_PLUS_FOURIER:
            return self
        return ProductKernelSpec(self.dim, self.form, M)

    def __call__(self, delta):
        return eval_product(delta, self)


def _check_nonsingular(t):
    t = wrap(np.asarray(t, dtype=np.float64))
    if np.any((t < SINGULAR_EPS) | (t > 1.0 - SINGULAR_EPS)):
        raise DegenerateDistance("log-sine kernel evaluated at zero distance")
    return t


def eval_logsin(t, offset=1.0):
    """``offset - ln(2 sin(pi t))`` with ``t`` reduced mod 1."""
    t = _check_nonsingular(t)
    out = offset - np.log(2.0 * np.sin(np.pi * t))
    return float(out) if out.ndim == 0 else out


def eval_cosine_series(t, coefficients):
    """``sum_k c_k cos(2 pi k t)``, summed from the highest k down."""
    t = wrap(np.asarray(t, dtype=np.float64))
    c = np.asarray(coefficients, dtype=np.float64)
    out = np.zeros_like(t)
    for k in range(c.size, 0, -1):
        out = out + c[k - 1] * np.cos(2.0 * np.pi * k * t)
    return float(out) if out.ndim == 0 else out


def eval_truncated_fourier(t, M):
    """``sum_{k=1}^{M} cos(2 pi k t)/k``, summed from ``k = M`` down."""
    if M < 1:
        raise ValueError("M must be at least 1")
    return eval_cosine_series(t, 1.0 / np.arange(1, M + 1))


def _cos_series_derivative(t, c):
    t = wrap(np.asarray(t, dtype=np.float64))
    out = np.zeros_like(t)
    for k in range(c.size, 0, -1):
        out = out - 2.0 * np.pi * k * c[k - 1] * np.sin(2.0 * np.pi * k * t)
    return float(out) if out.ndim == 0 else out


def fourier_tail_residual(t, M):
    """``|(-ln(2 sin(pi t))) - sum_{k<=M} cos(2 pi k t)/k|``."""
    if M < 1:
        raise ValueError("M must be at least 1")
    return np.abs(eval_logsin(t, 0.0) - eval_truncated_fourier(t, M))


def eval_product(delta, spec, M=None):
    """Product kernel at a difference vector (or a stack of them, last axis = d)."""
    if M is not None:
        spec = spec.with_degree(M)
    delta = np.asarray(delta, dtype=np.float64)
    if delta.shape[-1] != spec.dim:
        raise ValueError(f"expected {spec.dim} components, got {delta.shape[-1]}")
    factors = spec.base(delta)
    return np.prod(factors, axis=-1) if np.ndim(factors) > 1 else float(np.prod(factors))


def _as_matrix(points):
    if isinstance(points, PointSet):
        return points.points
    arr = np.asarray(points, dtype=np.float64)
    return arr.reshape(-1, 1) if arr.ndim == 1 else arr


def total_energy(x, points, kernel, M=None):
    """Sum of pair energies between ``x`` and every point of ``points``.

    ``M`` overrides the truncation degree of a truncated-Fourier kernel.
    """
    P = _as_matrix(points)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if isinstance(kernel, ProductKernelSpec):
        return float(np.sum(eval_product(x[None, :] - P, kernel, M)))
    if P.shape[1] != 1:
        raise ValueError("a scalar kernel needs one-dimensional points")
    if M is not None:
        kernel = kernel.with_degree(M)
    return float(np.sum(kernel(x[0] - P[:, 0])))
