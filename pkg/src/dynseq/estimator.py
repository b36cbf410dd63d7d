"""Scikit-learn style front end for greedy sequence construction."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .discrepancy import star_disc_dd, star_discrepancy, xn_embed
from .greedy import GreedyConfig, build_sequence
from .kernels import (
    COSINE_SERIES,
    FOURIER,
    LOGSIN,
    LOGSIN_PRODUCT,
    ONE_PLUS_FOURIER,
    EnergyKernel,
    ProductKernelSpec,
)
from .pointset import check_points


def make_kernel(name, dim=1, M=None, coefficients=None):
    """Kernel object from a short name (``logsin``, ``fourier``, ``cosine-series``)."""
    if dim == 1:
        if name == LOGSIN:
            return EnergyKernel(LOGSIN)
        if name == FOURIER:
            return EnergyKernel(FOURIER, M=M or 1)
        if name == COSINE_SERIES:
            if not coefficients:
                raise ValueError("cosine-series kernel needs coefficients")
            return EnergyKernel(COSINE_SERIES, coefficients=tuple(coefficients))
        raise ValueError(f"unknown kernel {name!r}")
    if name == LOGSIN:
        return ProductKernelSpec(dim, LOGSIN_PRODUCT)
    if name == FOURIER:
        return ProductKernelSpec(dim, ONE_PLUS_FOURIER, M)
    raise ValueError(f"kernel {name!r} has no product form in dimension {dim}")


class GreedyEnergySequence(BaseEstimator):
    """Greedy low-discrepancy sequence grown from an initial point set.

    ``fit(X)`` takes the initial points (shape ``(m,)`` or ``(m, dim)``) and
    extends them to ``n_points`` points. After fitting, ``points_`` holds the
    whole sequence in order and ``steps_`` one ``StepRecord`` per added point.

    Examples
    --------
    >>> seq = GreedyEnergySequence(n_points=8).fit([0.5, 1.0])
    >>> sorted(round(v * 8) for v in seq.points_[:, 0])
    [1, 2, 3, 4, 5, 6, 7, 8]
    """

    def __init__(self, n_points=100, kernel="logsin", dim=1, fourier_m_rule="equal-n",
                 fourier_m=None, coefficients=None, exclusion_exponent=10, grid=None,
                 engine="direct", certificate_multipliers=(1, 10, 100), n_jobs=1):
        self.n_points = n_points
        self.kernel = kernel
        self.dim = dim
        self.fourier_m_rule = fourier_m_rule
        self.fourier_m = fourier_m
        self.coefficients = coefficients
        self.exclusion_exponent = exclusion_exponent
        self.grid = grid
        self.engine = engine
        self.certificate_multipliers = certificate_multipliers
        self.n_jobs = n_jobs

    def _config(self):
        kernel = make_kernel(self.kernel, self.dim, self.fourier_m, self.coefficients)
        rule = self.fourier_m_rule if self.kernel == FOURIER else None
        return GreedyConfig(
            kernel=kernel,
            exclusion_exponent=self.exclusion_exponent,
            fourier_m_rule=rule,
            grid=self.grid,
            engine=self.engine,
            certificate_multipliers=tuple(self.certificate_multipliers),
            n_jobs=self.n_jobs,
        )

    def fit(self, X, y=None):
        X = check_points(X)
        if X.shape[1] != self.dim:
            raise ValueError(f"initial points have dimension {X.shape[1]}, expected {self.dim}")
        self.config_ = self._config()
        P, steps = build_sequence(X, self.n_points, self.config_)
        self.points_ = P.points
        self.steps_ = steps
        self.n_initial_ = X.shape[0]
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).points_

    def _check_fitted(self):
        if not hasattr(self, "points_"):
            raise NotFittedError("GreedyEnergySequence is not fitted yet; call fit first")

    def discrepancy(self, n=None):
        """Star discrepancy of the first ``n`` points (``X_N`` embedding in 1-D)."""
        self._check_fitted()
        n = len(self.points_) if n is None else n
        if self.dim == 1:
            return star_disc_dd(xn_embed(self.points_, n)).value
        return star_discrepancy(self.points_[:n]).value

    def score(self, X=None, y=None):
        """Negative star discrepancy of the constructed set (higher is better)."""
        return -self.discrepancy()
