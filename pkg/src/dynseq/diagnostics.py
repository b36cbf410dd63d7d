"""Per-step certificates and discrepancy-growth scans."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._search import newton_convex
from .discrepancy import star_disc_1d, star_disc_dd, xn_embed
from .exceptions import InsufficientPoints
from .greedy import _LogsinGaps, _pick, _snap, admissible_gaps, build_sequence
from .kernels import eval_logsin, eval_truncated_fourier
from .pointset import PointSet, wrap


def _matrix(points):
    if isinstance(points, PointSet):
        return points.points
    arr = np.asarray(points, dtype=np.float64)
    return arr.reshape(-1, 1) if arr.ndim <= 1 else arr


def lemma3_negativity(points, x, M):
    """``sum_n sum_{k<=M} cos(2 pi k (x - x_n)) / k`` for a 1-D prefix."""
    P = _matrix(points)
    return float(np.sum(eval_truncated_fourier(float(np.ravel(x)[0]) - P[:, 0], M)))


def theorem3_condition(points, x, M):
    """``sum_n prod_j (1 + sum_{k<=M} cos(2 pi k (x_j - x_{n,j})) / k)``."""
    P = _matrix(points)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    factors = 1.0 + eval_truncated_fourier(x[None, :] - P, M)
    return float(np.sum(np.prod(factors, axis=1)))


def theorem3_report(points, x, M):
    """Condition value compared against the thresholds 1 and ``N - 1``.

    ``N - 1`` is the number of existing points, i.e. the mean of the
    condition over the unit cube.
    """
    value = theorem3_condition(points, x, M)
    n_prev = _matrix(points).shape[0]
    return {"value": value, "le_one": value <= 1.0, "le_mean": value <= n_prev + 1e-9}


def min_energy_report(points, r):
    """Admissible minimizer of ``sum_n -ln(2 sin(pi |x - x_n|))`` and its value.

    Ties are broken toward the smallest position.
    """
    P = _matrix(points)
    prefix = wrap(P[:, 0])
    arcs = admissible_gaps(PointSet(P), r)
    gaps = _LogsinGaps(prefix, 1)
    xs = _snap(newton_convex(gaps.d1, gaps.d2, arcs[:, 0], arcs[:, 1]))
    energies = np.array([np.sum(eval_logsin(x - prefix, 0.0)) for x in xs])
    i = _pick(xs[:, None], energies, 1e-12)
    return float(xs[i]), float(energies[i])


def dyadic_block_check(sequence, depth, tol=1e-7):
    """True when the sequence carries the dyadic block structure up to ``depth``.

    Indices 1..2 must be {1/2, 1} (1 and 0 are identified); for ``j >= 2``
    the indices ``2^(j-1)+1 .. 2^j`` must hold the odd multiples of
    ``2^-j``. The final block may be cut short, in which case the points
    present must be distinct members of it.
    """
    x = _matrix(sequence)[:, 0]
    if depth < 1:
        raise ValueError("depth must be positive")
    need = 2 ** (depth - 1) + 1 if depth > 1 else 2
    if x.size < need:
        raise InsufficientPoints(f"depth {depth} needs at least {need} points, got {x.size}")

    def matches(block, targets):
        used = np.zeros(targets.size, dtype=bool)
        for v in block:
            dist = np.abs(targets - v)
            dist = np.minimum(dist, 1.0 - dist)
            hits = np.flatnonzero((dist <= tol) & ~used)
            if hits.size == 0:
                return False
            used[hits[0]] = True
        return True

    if not matches(x[:2], np.array([0.5, 0.0])):
        return False
    for j in range(2, depth + 1):
        block = x[2 ** (j - 1): 2**j]
        targets = np.arange(1, 2**j, 2) / 2**j
        if block.size == 0 or not matches(block, targets):
            return False
    return True


@dataclass
class ScanRow:
    N: int
    discrepancy: float
    prefix_discrepancy: float
    log_ratio: float
    sqrt_ratio: float


@dataclass
class ScanReport:
    """Discrepancy of a growing greedy sequence, normalized two ways.

    ``log_ratio`` is ``D N / (ln N)^d`` (conjectured bounded) and
    ``sqrt_ratio`` is ``D sqrt(N) / ln N`` (the proven rate). For 1-D
    sequences ``discrepancy`` is that of the ``X_N`` embedding and
    ``prefix_discrepancy`` that of the raw prefix.
    """

    rows: list = field(default_factory=list)
    dim: int = 1

    @property
    def max_log_ratio(self):
        return max(r.log_ratio for r in self.rows)

    @property
    def max_sqrt_ratio(self):
        return max(r.sqrt_ratio for r in self.rows)

    def as_array(self):
        return np.array([[r.N, r.discrepancy, r.prefix_discrepancy, r.log_ratio, r.sqrt_ratio]
                         for r in self.rows])


def scan_points(P, Ns):
    """Rows of a ScanReport for an already built sequence."""
    P = _matrix(P)
    d = P.shape[1]
    rows = []
    for N in Ns:
        if d == 1:
            D = star_disc_dd(xn_embed(P, N)).value
            prefix = star_disc_1d(P[:N]).value
            power = 1
        else:
            D = prefix = star_disc_dd(P[:N]).value
            power = d
        ln = math.log(N)
        rows.append(ScanRow(N, D, prefix, D * N / ln**power, D * math.sqrt(N) / ln))
    return ScanReport(rows, d)


def conjecture_scan(initial, N_max, config, stride=1, N_min=2):
    """Build once to ``N_max`` and scan every ``stride``-th N (N >= ``N_min``).

    Returns ``(report, points, steps)``.
    """
    m = _matrix(initial).shape[0]
    if N_max < m + 1:
        raise ValueError("N_max must exceed the size of the initial set")
    if stride < 1:
        raise ValueError("stride must be positive")
    P, steps = build_sequence(initial, N_max, config)
    Ns = [N for N in range(stride, N_max + 1, stride) if N >= max(N_min, 2)]
    return scan_points(P, Ns), P, steps
