"""Classical comparison point sets: van der Corput, Halton, Hammersley, Kronecker."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pointset import PointSet

FAMILIES = ("van_der_corput", "halton", "hammersley", "kronecker", "equispaced")


def radical_inverse(n, b=2):
    """Reflect the base-``b`` digits of ``n`` about the radix point."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if b < 2:
        raise ValueError("base must be at least 2")
    # integer numerator/denominator keeps the result exact until the final division
    num, den = 0, 1
    while n:
        n, digit = divmod(n, b)
        num = num * b + digit
        den *= b
    return num / den


def van_der_corput(N, b=2, index_origin=1):
    return np.array([radical_inverse(n, b) for n in range(index_origin, index_origin + N)])


def halton(n, bases=(2, 3)):
    return tuple(radical_inverse(n, b) for b in bases)


def halton_set(N, bases=(2, 3), index_origin=1):
    _check_coprime(bases)
    pts = [halton(n, bases) for n in range(index_origin, index_origin + N)]
    return PointSet(np.array(pts, dtype=np.float64).reshape(N, len(bases)), provenance="baseline")


def hammersley_set(N, b=2, index_origin=1):
    """``{(n/N, radical_inverse(n, b))}`` for ``n = origin .. origin+N-1``."""
    n = np.arange(index_origin, index_origin + N)
    pts = np.column_stack([n / N, [radical_inverse(int(k), b) for k in n]])
    return PointSet(pts, provenance="baseline")


def kronecker_set(N, alpha=math.sqrt(133), scaled=False):
    """``{(n/N, frac(alpha n)) : 1 <= n <= N}``.

    With ``scaled=True`` the second coordinate is ``frac(alpha n / N)``.
    """
    n = np.arange(1, N + 1, dtype=np.float64)
    prod = alpha * n / N if scaled else alpha * n
    return PointSet(np.column_stack([n / N, prod - np.floor(prod)]), provenance="baseline")


def equispaced(N):
    """``{n/N : 1 <= n <= N}``; the last point is 1.0."""
    return PointSet((np.arange(1, N + 1) / N).reshape(-1, 1), provenance="baseline")


def _check_coprime(bases):
    if any(b < 2 for b in bases):
        raise ValueError("bases must be at least 2")
    for i, a in enumerate(bases):
        for b in bases[i + 1:]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"Halton bases must be pairwise coprime, got {a} and {b}")


@dataclass(frozen=True)
class BaselineSpec:
    family: str
    base: int = 2
    bases: tuple = (2, 3)
    alpha: float = math.sqrt(133)
    index_origin: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown baseline family {self.family!r}")
        if self.index_origin not in (0, 1):
            raise ValueError("index_origin must be 0 or 1")
        if self.family == "halton":
            _check_coprime(self.bases)
        elif self.base < 2:
            raise ValueError("base must be at least 2")

    def generate(self, N):
        if self.family == "van_der_corput":
            return PointSet(van_der_corput(N, self.base, self.index_origin).reshape(-1, 1),
                            provenance="baseline")
        if self.family == "halton":
            return halton_set(N, self.bases, self.index_origin)
        if self.family == "hammersley":
            return hammersley_set(N, self.base, self.index_origin)
        if self.family == "kronecker":
            return kronecker_set(N, self.alpha)
        return equispaced(N)
