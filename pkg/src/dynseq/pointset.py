"""Point containers and input validation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import EmptySet

PROVENANCES = ("greedy", "baseline", "file")


def check_points(X, *, dim=None, allow_empty=False, closed=True):
    """Validate a point array and return it as a float64 ``(N, d)`` array.

    1-D input is read as N points in dimension one. Coordinates must lie in
    ``[0, 1]`` (``[0, 1)`` when ``closed`` is False).
    """
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise ValueError(f"expected a 1-D or 2-D array of points, got ndim={arr.ndim}")
    if arr.shape[0] == 0 and not allow_empty:
        raise EmptySet("point set is empty")
    if dim is not None and arr.shape[1] != dim:
        raise ValueError(f"expected dimension {dim}, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    upper_ok = arr <= 1.0 if closed else arr < 1.0
    if np.any(arr < 0.0) or not np.all(upper_ok):
        raise ValueError("point coordinates must lie in the unit cube")
    return arr


def wrap(x):
    """Reduce onto the torus ``[0, 1)``.

    Unlike a bare ``x % 1.0``, tiny negative inputs never round up to 1.0.
    """
    y = np.mod(x, 1.0)
    return np.where(y >= 1.0, 0.0, y)


@dataclass
class PointSet:
    """An ordered prefix of a sequence in the unit cube.

    Points are kept in insertion order. A coordinate of exactly 1.0 is stored
    verbatim; kernels reduce it to 0.0, discrepancy does not.
    """

    points: np.ndarray
    provenance: str = "file"
    dim: int = field(init=False)

    def __post_init__(self):
        self.points = check_points(self.points, allow_empty=True)
        self.dim = self.points.shape[1]
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __len__(self):
        return self.points.shape[0]

    @property
    def count(self):
        return len(self)

    def prefix(self, n):
        return PointSet(self.points[:n].copy(), provenance=self.provenance)

    def append(self, point):
        point = np.asarray(point, dtype=np.float64).reshape(1, self.dim)
        return PointSet(np.vstack([self.points, point]), provenance=self.provenance)
