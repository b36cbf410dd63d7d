"""Exact star discrepancy, Weyl sums and Erdős–Turán type diagnostics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .exceptions import InsufficientPoints, UnsupportedDimension
from .pointset import PointSet, check_points

CLOSED = "closed"
OPEN = "open"

# (2K+1)^d frequency vectors beyond this are refused
KOKSMA_MAX_FREQUENCIES = 10**7


@dataclass(frozen=True)
class DiscrepancyReport:
    """Star discrepancy with the anchored box that attains it.

    ``mode`` is ``"closed"`` when the supremum is ``count/N - vol`` over the
    closed box ``[0, corner]`` and ``"open"`` when it is ``vol - count/N``
    over the half-open box ``[0, corner)``.
    """

    value: float
    corner: tuple
    mode: str
    n_points: int
    dim: int

    def to_dict(self):
        return {
            "value": self.value,
            "corner": list(self.corner),
            "mode": self.mode,
            "n_points": self.n_points,
            "dim": self.dim,
        }


def _as_array(points):
    if isinstance(points, PointSet):
        points = points.points
    return check_points(points)


def local_discrepancy(points, corner, mode):
    """Signed-to-positive local discrepancy of one anchored box.

    Used to re-evaluate a witness independently of the search.
    """
    X = _as_array(points)
    corner = np.asarray(corner, dtype=np.float64)
    vol = float(np.prod(corner))
    n = X.shape[0]
    if mode == CLOSED:
        count = np.count_nonzero(np.all(X <= corner, axis=1))
        return count / n - vol
    if mode == OPEN:
        count = np.count_nonzero(np.all(X < corner, axis=1))
        return vol - count / n
    raise ValueError(f"unknown counting mode {mode!r}")


def star_disc_1d(points):
    """Exact star discrepancy of a one-dimensional point set.

    Uses the sorted-order formula ``max_i max(i/N - x_(i), x_(i) - (i-1)/N)``.
    """
    X = _as_array(points)
    if X.shape[1] != 1:
        raise ValueError(f"star_disc_1d needs d=1, got d={X.shape[1]}")
    x = np.sort(X[:, 0])
    n = x.size
    i = np.arange(1, n + 1)
    upper = i / n - x
    lower = x - (i - 1) / n
    iu = int(np.argmax(upper))
    il = int(np.argmax(lower))
    if upper[iu] >= lower[il]:
        return DiscrepancyReport(float(upper[iu]), (float(x[iu]),), CLOSED, n, 1)
    return DiscrepancyReport(float(lower[il]), (float(x[il]),), OPEN, n, 1)


def _grid_counts(X):
    """Closed counts on the candidate-corner grid.

    Candidates along each axis are the unique coordinates plus 1.0. Returns
    the per-axis candidate arrays and ``C`` with
    ``C[i, j, ...] = #{p : p_0 <= u_0[i], p_1 <= u_1[j], ...}``.
    """
    axes = []
    idx = []
    for j in range(X.shape[1]):
        u = np.unique(np.append(X[:, j], 1.0))
        axes.append(u)
        idx.append(np.searchsorted(u, X[:, j]))
    shape = tuple(len(u) for u in axes)
    hist = np.zeros(shape, dtype=np.int64)
    np.add.at(hist, tuple(idx), 1)
    for ax in range(X.shape[1]):
        hist = np.cumsum(hist, axis=ax)
    return axes, hist


def star_disc_dd(points):
    """Exact star discrepancy in two or three dimensions.

    Every corner in the product of (unique coordinates ∪ {1}) is examined
    with both the closed count (``<=`` on each axis) and the open count
    (``<`` on each axis). Closed counts come from a cumulative histogram; the
    open count at a corner equals the closed count at the previous candidate
    on every axis, because every point coordinate is itself a candidate.
    """
    X = _as_array(points)
    n, d = X.shape
    if d not in (2, 3):
        if d == 1:
            raise ValueError("use star_disc_1d for d=1")
        raise UnsupportedDimension(f"exact star discrepancy supports d in (2, 3), got d={d}")
    axes, closed = _grid_counts(X)
    opened = np.pad(closed, [(1, 0)] * d)[tuple(slice(0, -1) for _ in range(d))]
    vol = axes[0]
    for u in axes[1:]:
        vol = np.multiply.outer(vol, u)
    upper = closed / n - vol
    lower = vol - opened / n
    iu = np.unravel_index(int(np.argmax(upper)), upper.shape)
    il = np.unravel_index(int(np.argmax(lower)), lower.shape)
    if upper[iu] >= lower[il]:
        value, at, mode = upper[iu], iu, CLOSED
    else:
        value, at, mode = lower[il], il, OPEN
    corner = tuple(float(axes[j][at[j]]) for j in range(d))
    return DiscrepancyReport(float(value), corner, mode, n, d)


def star_discrepancy(points):
    """Dispatch to the exact routine for the point set's dimension."""
    X = _as_array(points)
    if X.shape[1] == 1:
        return star_disc_1d(X)
    return star_disc_dd(X)


def xn_embed(sequence, n):
    """The set ``{(k/n, x_k) : 1 <= k <= n}`` built from a 1-D sequence."""
    X = _as_array(sequence)
    if X.shape[1] != 1:
        raise ValueError("xn_embed needs a one-dimensional sequence")
    if n < 1:
        raise ValueError("n must be positive")
    if X.shape[0] < n:
        raise InsufficientPoints(f"sequence has {X.shape[0]} points, need {n}")
    first = np.arange(1, n + 1) / n
    return PointSet(np.column_stack([first, X[:n, 0]]), provenance="file")


def _exp_sums(X, freqs):
    """Moduli of ``(1/N) Σ_n exp(2πi <k, x_n>)`` for each row of ``freqs``."""
    phase = 2.0 * np.pi * (np.asarray(freqs, dtype=np.float64) @ X.T)
    return np.hypot(np.cos(phase).sum(axis=1), np.sin(phase).sum(axis=1)) / X.shape[0]


def weyl_sum(points, k):
    """``|Σ_n exp(2πi k x_n)| / N`` for a one-dimensional set."""
    X = _as_array(points)
    if X.shape[1] != 1:
        raise ValueError("weyl_sum needs d=1")
    return float(min(_exp_sums(X, [[k]])[0], 1.0))


def weyl_table(points, K):
    """Normalized Weyl-sum moduli for frequencies ``0..K`` (1-D)."""
    X = _as_array(points)
    if X.shape[1] != 1:
        raise ValueError("weyl_table needs d=1")
    return np.minimum(_exp_sums(X, np.arange(K + 1).reshape(-1, 1)), 1.0)


def erdos_turan_diag(points, K):
    """``1/K + Σ_{k<=K} weyl_sum(k)/k`` with constant one.

    This mirrors the shape of the Erdős–Turán bound; it is a diagnostic and
    not a certified upper bound on the star discrepancy.
    """
    if K < 1:
        raise ValueError("K must be positive")
    table = weyl_table(points, K)
    k = np.arange(1, K + 1)
    return float(1.0 / K + np.sum(table[1:] / k))


def erdos_turan_koksma_diag(points, K):
    """Σ over ``0 < |k|_inf <= K`` of ``|(1/N) Σ exp(2πi<k,x>)| / r(2k)``.

    ``r(2k) = Π_j max(1, 2|k_j|)``.
    """
    X = _as_array(points)
    d = X.shape[1]
    if d < 2:
        raise ValueError("erdos_turan_koksma_diag needs d >= 2")
    if K < 1:
        raise ValueError("K must be positive")
    if (2 * K + 1) ** d > KOKSMA_MAX_FREQUENCIES:
        raise ValueError(f"(2K+1)^d = {(2 * K + 1) ** d} frequency vectors exceeds the cost guard")
    rng = np.arange(-K, K + 1)
    freqs = np.array(list(itertools.product(rng, repeat=d)), dtype=np.int64)
    freqs = freqs[np.any(freqs != 0, axis=1)]
    weights = 1.0 / np.prod(np.maximum(1, 2 * np.abs(freqs)), axis=1)
    total = 0.0
    for start in range(0, freqs.shape[0], 4096):
        chunk = slice(start, start + 4096)
        total += float(np.sum(weights[chunk] * _exp_sums(X, freqs[chunk])))
    return total
