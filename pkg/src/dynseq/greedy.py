"""Greedy energy-minimizing sequence construction."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from ._search import bisect_derivative, golden_section, newton_convex
from .exceptions import NoAdmissibleRegion
from .kernels import (
    LOGSIN,
    EnergyKernel,
    ProductKernelSpec,
    eval_product,
    eval_truncated_fourier,
    total_energy,
)
from .pointset import PointSet, wrap
from .spectral import WeylSums

ENGINES = ("direct", "spectral")
DEFAULT_GRID = {1: 4096, 2: 64, 3: 32}
MAX_SWEEPS = 64
# a position this close to 1.0 is the torus point 0.0
SNAP = 1e-13


def _snap(x):
    x = wrap(np.asarray(x, dtype=np.float64))
    return np.where(1.0 - x < SNAP, 0.0, x)


def parse_m_rule(rule):
    """``"equal-n"`` -> 1.0, ``"mult:C"`` -> C; ``None`` keeps the kernel's own M."""
    if rule is None:
        return None
    if isinstance(rule, (int, float)):
        return float(rule)
    rule = rule.replace("_", "-")
    if rule == "equal-n":
        return 1.0
    if rule.startswith("mult:"):
        c = float(rule.split(":", 1)[1])
        if c <= 0:
            raise ValueError("fourier M multiplier must be positive")
        return c
    raise ValueError(f"unknown fourier M rule {rule!r}")


@dataclass
class GreedyConfig:
    """Search settings for one greedy construction.

    ``grid`` defaults per dimension (4096 in 1-D, 64 in 2-D, 32 in 3-D).
    ``fourier_m_rule`` ties the truncation degree of Fourier kernels to the
    index N of the point being placed: ``"equal-n"`` uses M = N and
    ``"mult:C"`` uses M = ceil(C N).
    """

    kernel: EnergyKernel | ProductKernelSpec = field(default_factory=EnergyKernel)
    exclusion_exponent: int = 10
    exclusion_floor: float = 1e-15
    fourier_m_rule: str | None = "equal-n"
    grid: int | None = None
    refine_tolerance: float = 1e-12
    tie_tolerance: float = 1e-12
    engine: str = "direct"
    certificate_multipliers: tuple = (1, 10, 100)
    n_jobs: int = 1

    def __post_init__(self):
        if self.exclusion_exponent < 1:
            raise ValueError("exclusion_exponent must be a positive integer")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        if self.engine == "spectral" and self.kernel.singular:
            raise ValueError("the spectral engine needs a finite (Fourier/cosine) kernel")
        if self.grid is not None and self.grid < 2:
            raise ValueError("grid must have at least two samples per axis")
        if self.n_jobs < 1:
            raise ValueError("n_jobs must be positive")
        parse_m_rule(self.fourier_m_rule)

    @property
    def dim(self):
        return self.kernel.dim if isinstance(self.kernel, ProductKernelSpec) else 1

    def grid_size(self):
        return self.grid if self.grid is not None else DEFAULT_GRID.get(self.dim, 32)

    def exclusion_radius(self, N):
        """Exclusion radius used when placing point number ``N``."""
        return max(float(N) ** (-self.exclusion_exponent), self.exclusion_floor)

    def kernel_at(self, N):
        """The kernel with its truncation degree resolved for step ``N``."""
        mult = parse_m_rule(self.fourier_m_rule)
        if mult is None:
            return self.kernel
        return self.kernel.with_degree(max(1, int(np.ceil(mult * N - 1e-9))))

    def to_dict(self):
        out = asdict(self)
        out["kernel"] = _kernel_dict(self.kernel)
        out["certificate_multipliers"] = list(self.certificate_multipliers)
        out["grid"] = self.grid_size()
        return out


def _kernel_dict(kernel):
    if isinstance(kernel, ProductKernelSpec):
        return {"type": "product", "dim": kernel.dim, "form": kernel.form, "M": kernel.M}
    return {"type": "scalar", "variant": kernel.variant, "M": kernel.M,
            "coefficients": list(kernel.coefficients), "offset": kernel.offset}


@dataclass
class StepRecord:
    """Audit trail of one greedy step."""

    index: int
    point: tuple
    energy: float
    certificates: dict
    evaluations: int
    min_distance: float

    def to_dict(self):
        return asdict(self) | {"point": list(self.point)}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["index"]), tuple(data["point"]), float(data["energy"]),
                   dict(data["certificates"]), int(data["evaluations"]),
                   float(data["min_distance"]))


def _map_chunks(func, n, n_jobs):
    """Apply ``func(slice)`` over ``range(n)`` in contiguous chunks, in order."""
    if n_jobs <= 1 or n < 2 * n_jobs:
        return [func(slice(0, n))]
    bounds = np.linspace(0, n, n_jobs + 1).astype(int)
    chunks = [slice(bounds[i], bounds[i + 1]) for i in range(n_jobs)]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(func, chunks))


def _as_pointset(points, dim=None):
    if isinstance(points, PointSet):
        return points
    return PointSet(np.asarray(points, dtype=np.float64).reshape(-1, dim or 1))


def admissible_gaps(points, r):
    """Circle arcs between consecutive points, each shrunk by ``r`` at both ends.

    Returns an ``(k, 2)`` array of ``(start, end)`` with ``start`` in [0, 1)
    and ``end`` possibly above 1 for the arc that wraps around.
    """
    P = _as_pointset(points)
    if P.dim != 1:
        raise ValueError("admissible_gaps needs d=1")
    if len(P) == 0:
        raise ValueError("admissible_gaps needs at least one point")
    s = np.unique(wrap(P.points[:, 0]))
    starts = s + r
    ends = np.append(s[1:], s[0] + 1.0) - r
    keep = ends > starts
    if not np.any(keep):
        raise NoAdmissibleRegion(f"exclusion radius {r:g} leaves no admissible arc")
    arcs = np.column_stack([starts[keep], ends[keep]])
    arcs[:, 1] -= np.floor(arcs[:, 0])
    arcs[:, 0] -= np.floor(arcs[:, 0])
    return arcs[np.argsort(arcs[:, 0], kind="stable")]


def _pick(xs, energies, tie_tolerance):
    """Lexicographically smallest candidate among the near-minimal energies."""
    xs = np.atleast_2d(xs)
    energies = np.asarray(energies, dtype=np.float64)
    best = np.min(energies)
    tied = np.flatnonzero(energies <= best + tie_tolerance * max(1.0, abs(best)))
    order = np.lexsort(xs[tied].T[::-1])
    return tied[order[0]]


def _certificates_1d(x, prefix, config, N, weyl=None):
    out = {}
    for mult in config.certificate_multipliers:
        M = int(mult * N)
        if weyl is not None:
            value = float(weyl.series(np.array([x]), 1.0 / np.arange(1, M + 1))[0])
        else:
            value = float(np.sum(eval_truncated_fourier(x - prefix, M)))
        out[f"lemma3_m{mult}"] = value
    return out


def _theorem3_value(x, P, M):
    factors = 1.0 + eval_truncated_fourier(x[None, :] - P, M)
    return float(np.sum(np.prod(factors, axis=1)))


def _torus_min_distance(x, P):
    diff = np.abs(wrap(x[None, :] - P))
    per_axis = np.minimum(diff, 1.0 - diff)
    return float(np.min(per_axis))


class _LogsinGaps:
    """Energy derivatives of the log-sine kernel restricted to each gap."""

    def __init__(self, prefix, n_jobs):
        self.p = prefix
        self.n_jobs = n_jobs
        self.evaluations = 0

    def _rows(self, x, fn):
        self.evaluations += x.size
        parts = _map_chunks(lambda s: fn(np.pi * (x[s, None] - self.p[None, :])).sum(axis=1),
                            x.size, self.n_jobs)
        return np.concatenate(parts)

    def d1(self, x, _idx=None):
        return self._rows(x, lambda u: -np.pi / np.tan(u))

    def d2(self, x, _idx=None):
        return self._rows(x, lambda u: (np.pi / np.sin(u)) ** 2)


def _energy_rows(x, prefix, kernel, n_jobs):
    parts = _map_chunks(lambda s: kernel(x[s, None] - prefix[None, :]).sum(axis=1), x.size, n_jobs)
    return np.concatenate(parts)


def _next_point_logsin(prefix, arcs, config):
    gaps = _LogsinGaps(prefix, config.n_jobs)
    x = newton_convex(gaps.d1, gaps.d2, arcs[:, 0], arcs[:, 1])
    x = _snap(x)
    energies = _energy_rows(x, prefix, config.kernel, config.n_jobs)
    return x, energies, gaps.evaluations + x.size


def _next_point_finite(prefix, arcs, kernel, config, weyl):
    """Dense grid over the circle followed by golden refinement of each local minimum."""
    M = kernel.degree
    coef = kernel.spectrum()
    S = max(config.grid_size(), 16 * M)
    grid = np.arange(S) / S
    n = prefix.size

    if config.engine == "spectral":
        def energy(x):
            return kernel.offset * n + weyl.series(x, coef)

        def denergy(x):
            return weyl.series_derivative(x, coef)
        values = kernel.offset * n + weyl.series_on_grid(S, coef)
    else:
        def energy(x):
            return _energy_rows(np.ravel(x), prefix, kernel, config.n_jobs).reshape(np.shape(x))

        def denergy(x):
            flat = np.ravel(x)
            parts = _map_chunks(lambda s: kernel.derivative(flat[s, None] - prefix[None, :]).sum(axis=1),
                                flat.size, config.n_jobs)
            return np.concatenate(parts).reshape(np.shape(x))
        values = energy(grid)
    evaluations = S

    # arc membership of every grid sample (arcs may extend past 1)
    rel = np.mod(grid[:, None] - arcs[None, :, 0], 1.0)
    inside = rel <= (arcs[:, 1] - arcs[:, 0])[None, :]
    ok = inside.any(axis=1)
    if not np.any(ok):
        # arcs narrower than the grid spacing: refine each arc directly
        lo, hi = arcs[:, 0], arcs[:, 1]
    else:
        masked = np.where(ok, values, np.inf)
        local = ok & (masked <= np.roll(masked, 1)) & (masked <= np.roll(masked, -1))
        j = np.flatnonzero(local)
        arc_of = np.argmax(inside[j], axis=1)
        h = 1.0 / S
        # unwrap the sample into its arc's coordinate range
        xj = arcs[arc_of, 0] + rel[j, arc_of]
        lo = np.maximum(xj - h, arcs[arc_of, 0])
        hi = np.minimum(xj + h, arcs[arc_of, 1])
    x, fx = golden_section(energy, lo, hi, tol=config.refine_tolerance)
    evaluations += 2 * x.size * 60
    polished = bisect_derivative(denergy, np.maximum(lo, x - 1e-6), np.minimum(hi, x + 1e-6))
    good = np.isfinite(polished)
    if np.any(good):
        fp = energy(polished[good])
        better = fp <= fx[good] + 1e-12 * np.maximum(1.0, np.abs(fx[good]))
        x[np.flatnonzero(good)[better]] = polished[good][better]
    # keep arc endpoints as candidates: the constrained minimum may sit on the boundary
    x = np.concatenate([x, arcs[:, 0], arcs[:, 1]])
    x = _snap(x)
    return x, energy(x), evaluations + x.size


def next_point_1d(points, config, *, weyl=None):
    """Place the next point of a one-dimensional greedy sequence.

    Returns the new point (as a length-1 array) and its ``StepRecord``.
    ``weyl`` may carry running Weyl sums of ``points`` for the spectral
    engine and the certificate sums.
    """
    P = _as_pointset(points)
    if P.dim != 1:
        raise ValueError("next_point_1d needs d=1")
    if len(P) < 1:
        raise ValueError("need at least one existing point")
    N = len(P) + 1
    kernel = config.kernel_at(N)
    prefix = wrap(P.points[:, 0])
    arcs = admissible_gaps(P, config.exclusion_radius(N))
    if kernel.variant == LOGSIN:
        xs, energies, evals = _next_point_logsin(prefix, arcs, config)
    else:
        if config.engine == "spectral" and weyl is None:
            weyl = WeylSums(kernel.degree, prefix)
        xs, energies, evals = _next_point_finite(prefix, arcs, kernel, config, weyl)
    i = _pick(xs[:, None], energies, config.tie_tolerance)
    x = float(xs[i])
    # the reported energy is always recomputed pairwise
    energy = total_energy(np.array([x]), prefix, kernel)
    record = StepRecord(
        index=N,
        point=(x,),
        energy=energy,
        certificates=_certificates_1d(x, prefix, config, N, weyl),
        evaluations=int(evals),
        min_distance=_torus_min_distance(np.array([x]), prefix[:, None]),
    )
    return np.array([x]), record


def _axis_bounds(t, coords, r):
    """Nearest admissible interval around ``t`` on one axis, given occupied ``coords``."""
    rel = np.mod(coords - t, 1.0)
    right = np.min(np.where(rel > 0, rel, 1.0))
    left = np.min(np.where(rel > 0, 1.0 - rel, 1.0))
    if np.any(rel == 0):
        left = right = 0.0
    return t - left + r, t + right - r


class _DirectAxes:
    """Per-axis kernel factors evaluated pair by pair."""

    def __init__(self, base, prefix, n_jobs):
        self.base = base
        self.prefix = prefix
        self.n_jobs = n_jobs

    def factors(self, t, j):
        """Matrix of ``base(t_i - x_{n,j})`` with shape ``(len(t), N)``."""
        diff = wrap(np.asarray(t, dtype=np.float64)[:, None] - self.prefix[None, :, j])
        return np.concatenate(_map_chunks(lambda s: self.base(diff[s]), diff.shape[0], self.n_jobs),
                              axis=0)

    def restriction(self, j, w):
        pj, base = self.prefix[:, j], self.base

        def f(t):
            return base(np.asarray(t, dtype=np.float64).reshape(-1)[:, None] - pj[None, :]) @ w

        def df(t):
            return base.derivative(np.asarray(t, dtype=np.float64).reshape(-1)[:, None] - pj[None, :]) @ w
        return f, df


class _SpectralAxes:
    """Per-axis factors ``1 + sum_k c_k cos(2 pi k (t - x_{n,j}))`` through exponential sums."""

    def __init__(self, base, prefix):
        self.offset = base.offset
        self.c = base.spectrum()
        self.k = np.arange(1, self.c.size + 1)
        # E[j][k-1, n] = exp(-2 pi i k x_{n,j})
        self.E = [np.exp(-2j * np.pi * np.multiply.outer(self.k, prefix[:, j]))
                  for j in range(prefix.shape[1])]

    def _phase(self, t):
        return np.exp(2j * np.pi * np.multiply.outer(np.asarray(t, dtype=np.float64).reshape(-1), self.k))

    def factors(self, t, j):
        return self.offset + np.real((self._phase(t) * self.c) @ self.E[j])

    def restriction(self, j, w):
        B = self.c * (self.E[j] @ w)
        dB = 2j * np.pi * self.k * B
        total = self.offset * np.sum(w)

        def f(t):
            return total + np.real(self._phase(t) @ B)

        def df(t):
            return np.real(self._phase(t) @ dB)
        return f, df


def _accept_polish(f, polished, current, scale):
    """Keep a derivative root unless it is clearly worse than the golden estimate."""
    if not np.isfinite(polished):
        return None
    fp = float(f(np.array([polished]))[0])
    return fp if fp <= current + 1e-12 * max(1.0, abs(scale)) else None


def next_point_dd(points, config):
    """Place the next point of a ``d``-dimensional greedy sequence.

    Tensor grid offset by half a cell, then cyclic coordinate-wise golden
    refinement around the best grid node. Works for ``d = 1`` too.
    """
    spec = config.kernel
    if not isinstance(spec, ProductKernelSpec):
        raise ValueError("next_point_dd needs a ProductKernelSpec kernel")
    P = _as_pointset(points, spec.dim)
    d = spec.dim
    if P.dim != d:
        raise ValueError(f"points have dimension {P.dim}, kernel has {d}")
    if len(P) < 1:
        raise ValueError("need at least one existing point")
    N = len(P) + 1
    kernel = config.kernel_at(N)
    base = kernel.base
    prefix = wrap(P.points)
    r = config.exclusion_radius(N)
    G = config.grid_size()
    nodes = (np.arange(G) + 0.5) / G
    if config.engine == "spectral":
        axes = _SpectralAxes(base, prefix)
    else:
        axes = _DirectAxes(base, prefix, config.n_jobs)

    factors = []
    for j in range(d):
        blocked = np.zeros(G, dtype=bool)
        if kernel.singular:
            diff = wrap(nodes[:, None] - prefix[None, :, j])
            blocked = np.any(np.minimum(diff, 1.0 - diff) < r, axis=1)
        F = np.full((G, len(prefix)), np.nan)
        if np.any(~blocked):
            F[~blocked] = axes.factors(nodes[~blocked], j)
        factors.append(F)
    if any(np.all(np.isnan(F[:, 0])) for F in factors):
        raise NoAdmissibleRegion("per-axis exclusion removes every grid node")
    letters = "abcdefgh"[:d]
    grid_energy = np.einsum(",".join(f"{c}n" for c in letters) + "->" + letters, *factors)
    grid_energy = np.where(np.isnan(grid_energy), np.inf, grid_energy)
    evaluations = G**d
    flat = grid_energy.ravel()
    best = np.min(flat)
    tied = np.flatnonzero(flat <= best + config.tie_tolerance * max(1.0, abs(best)))
    # ravel order is lexicographic in the node indices
    x = nodes[np.array(np.unravel_index(tied[0], grid_energy.shape))]

    h = 1.0 / G
    for _ in range(MAX_SWEEPS):
        moved = 0.0
        for j in range(d):
            w = np.ones(len(prefix))
            for i in range(d):
                if i != j:
                    w = w * axes.factors(x[i:i + 1], i)[0]
            f, df = axes.restriction(j, w)
            lo, hi = x[j] - h, x[j] + h
            if kernel.singular:
                a, b = _axis_bounds(x[j], prefix[:, j], r)
                lo, hi = max(lo, a), min(hi, b)
                if hi <= lo:
                    continue
            current = float(f(np.array([x[j]]))[0])
            t, ft = golden_section(f, [lo], [hi], tol=config.refine_tolerance)
            t, ft = float(t[0]), float(ft[0])
            evaluations += 120
            polished = bisect_derivative(df, [max(lo, t - 1e-6)], [min(hi, t + 1e-6)])[0]
            fp = _accept_polish(f, polished, ft, ft)
            if fp is not None:
                t, ft = float(polished), fp
            if ft <= current:
                t = float(_snap(t))
                step = abs(t - x[j])
                moved = max(moved, min(step, 1.0 - step))
                x[j] = t
        if moved < config.refine_tolerance:
            break
    x = _snap(x)
    energy = float(np.sum(eval_product(x[None, :] - prefix, kernel)))
    record = StepRecord(
        index=N,
        point=tuple(float(v) for v in x),
        energy=energy,
        certificates={"theorem3": _theorem3_value(x, prefix, N)},
        evaluations=int(evaluations),
        min_distance=_torus_min_distance(x, prefix),
    )
    return x, record


class _StepRunner:
    """Carries incremental state (Weyl sums) across the steps of one build."""

    def __init__(self, P, target, config):
        self.config = config
        self.weyl = None
        if config.dim == 1 and len(P):
            K = int(max(config.certificate_multipliers, default=0) * target)
            if config.engine == "spectral":
                K = max(K, config.kernel_at(target).degree or 0)
            self.weyl = WeylSums(K, wrap(P.points[:, 0]))

    def step(self, P):
        if isinstance(self.config.kernel, ProductKernelSpec):
            return next_point_dd(P, self.config)
        x, rec = next_point_1d(P, self.config, weyl=self.weyl)
        self.weyl.add(x[0])
        return x, rec


def build_sequence(initial, target_N, config):
    """Extend ``initial`` greedily until it holds ``target_N`` points.

    The initial points keep indices ``1..m``; the result is deterministic
    in ``(initial, config)``.
    """
    P = _as_pointset(initial, config.dim)
    if len(P) < 1:
        raise ValueError("initial set must contain at least one point")
    if P.dim != config.dim:
        raise ValueError(f"initial set has dimension {P.dim}, kernel has {config.dim}")
    if target_N < len(P):
        raise ValueError("target_N is smaller than the initial set")
    runner = _StepRunner(P, target_N, config)
    pts = [row for row in P.points]
    steps = []
    current = PointSet(np.array(pts), provenance="greedy")
    while len(pts) < target_N:
        x, rec = runner.step(current)
        pts.append(np.asarray(x, dtype=np.float64))
        steps.append(rec)
        current = PointSet(np.array(pts), provenance="greedy")
    return current, steps
