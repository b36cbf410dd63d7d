"""Acceptance suite: one test per criterion.

Each test attaches a short ``summary`` through ``record_property``; the
conftest prints one PASS/FAIL line per criterion at the end of the run.
"""

import math
import time

import numpy as np
import pytest
from oracles import brute_1d, naive_2d

from dynseq import (
    GreedyConfig,
    ProductKernelSpec,
    build_sequence,
    dyadic_block_check,
    fourier_tail_residual,
    io,
    lemma3_negativity,
    star_disc_1d,
    star_disc_dd,
    xn_embed,
)
from dynseq.diagnostics import scan_points
from dynseq.tables import TABLE1, TABLE1_N, TABLE2, TABLE2_N, baseline_disc

pytestmark = pytest.mark.acceptance

INIT_A = [0.5, 0.95]
INIT_B = [0.5, 0.51, 0.52, 0.53, 0.54]
INIT_C = [0.3]


def xn_values(P, Ns):
    return [star_disc_dd(xn_embed(P, N)).value for N in Ns]


@pytest.fixture(scope="module")
def long_runs():
    """Greedy log-sine runs to N=500 from the three initial sets."""
    cfg = GreedyConfig(certificate_multipliers=())
    return {tuple(init): build_sequence(init, 500, cfg)[0].points for init in (INIT_A, INIT_B, INIT_C)}


def run_d2(n_jobs):
    spec = ProductKernelSpec(2, "one-plus-fourier")
    cfg = GreedyConfig(kernel=spec, engine="spectral", certificate_multipliers=(), n_jobs=n_jobs)
    return build_sequence([[0.5, 0.5]], 200, cfg)


def test_criterion_01_table1_baselines(record_property):
    t0 = time.perf_counter()
    worst = {}
    for origin in (0, 1):
        worst[origin] = {
            fam: max(abs(baseline_disc(fam, N, origin) - ref)
                     for N, ref in zip(TABLE1_N, TABLE1[fam]))
            for fam in ("halton", "hammersley", "kronecker")
        }
    elapsed = time.perf_counter() - t0
    best = min(worst, key=lambda o: (max(worst[o].values()), sum(worst[o].values())))
    per_family = ", ".join(f"{fam} {dev:.4f}" for fam, dev in worst[best].items())
    record_property("summary", f"origin {best} max deviations: {per_family} (tol 0.002), {elapsed:.2f}s")
    assert elapsed < 5.0
    assert max(worst[best].values()) <= 0.002


def test_criterion_02_table1_greedy(record_property):
    t0 = time.perf_counter()
    P, _ = build_sequence(INIT_A, 250, GreedyConfig(engine="direct"))
    values = xn_values(P, TABLE1_N)
    elapsed = time.perf_counter() - t0
    dev = max(abs(v - p) for v, p in zip(values, TABLE1["greedy"]))
    record_property("summary", "D = " + "/".join(f"{v:.4f}" for v in values)
                    + f", max deviation {dev:.4f} (tol 0.005), {elapsed:.1f}s")
    assert elapsed < 60.0
    assert dev <= 0.005


def test_criterion_03_table2(record_property):
    P, _ = build_sequence(INIT_B, max(TABLE2_N), GreedyConfig(certificate_multipliers=()))
    values = xn_values(P, TABLE2_N)
    dev = max(abs(v - p) for v, p in zip(values, TABLE2))
    record_property("summary", "D = " + "/".join(f"{v:.4f}" for v in values)
                    + f", max deviation {dev:.4f} (tol 0.01)")
    assert dev <= 0.01


def test_criterion_04_rates(long_runs, record_property):
    sqrt_max = {}
    for init, P in long_runs.items():
        sqrt_max[init] = scan_points(P, range(16, 501)).max_sqrt_ratio
    log_max = scan_points(long_runs[tuple(INIT_A)], range(50, 501)).max_log_ratio
    record_property("summary", "max D*sqrt(N)/ln N = "
                    + "/".join(f"{v:.3f}" for v in sqrt_max.values())
                    + f" (<= 5), max D*N/ln N = {log_max:.3f} (<= 1.5)")
    assert max(sqrt_max.values()) <= 5.0
    assert log_max <= 1.5


def test_criterion_05_lemma3(long_runs, record_property):
    worst, worst_at = -math.inf, None
    for init in (INIT_A, INIT_B):
        x = long_runs[tuple(init)][:250, 0]
        for n in range(max(8, len(init) + 1), 251):
            s = lemma3_negativity(x[: n - 1], x[n - 1], 10 * n)
            if s > worst:
                worst, worst_at = s, (init[:2], n)
    record_property("summary", f"max sum {worst:.4f} at n={worst_at[1]} (<= 1e-6)")
    assert worst <= 1e-6


def test_criterion_06_van_der_corput(record_property):
    P, _ = build_sequence([0.5, 1.0], 64, GreedyConfig(certificate_multipliers=()))
    x = P.points[:, 0]
    blocks = dyadic_block_check(x, 6, 1e-7)
    errs = [abs(star_disc_1d(x[:N]).value - 1 / N) for N in (2, 4, 8, 16, 32, 64)]
    record_property("summary", f"dyadic blocks {'ok' if blocks else 'broken'}, "
                               f"max |D_N - 1/N| = {max(errs):.1e}")
    assert blocks
    assert max(errs) <= 1e-9


def test_criterion_07_oracles(record_property):
    rng = np.random.default_rng(20240607)
    err1 = max(abs(star_disc_1d(x).value - brute_1d(x))
               for x in (rng.random(rng.integers(1, 201)) for _ in range(100)))
    err2 = max(abs(star_disc_dd(P).value - naive_2d(P))
               for P in (rng.random((rng.integers(1, 41), 2)) for _ in range(50)))
    record_property("summary", f"1D max error {err1:.1e} (<= 1e-5), 2D max error {err2:.1e} (<= 1e-12)")
    assert err1 <= 1e-5
    assert err2 <= 1e-12


def test_criterion_08_tail_residual(record_property):
    t = np.round(np.arange(1, 100) / 100, 2)
    Ms = (64, 256, 1024, 4096)
    res = np.array([fourier_tail_residual(t, M) for M in Ms])
    bound = np.array([8 / (M * np.sin(np.pi * t)) for M in Ms])
    worst = float(np.max(res / bound))
    decreasing = bool(np.all(np.diff(res, axis=0) < 0))
    record_property("summary", f"max residual/bound {worst:.3f} (<= 1), "
                               f"decreasing in M: {decreasing}")
    assert worst <= 1.0
    assert decreasing


@pytest.fixture(scope="module")
def d2_run():
    t0 = time.perf_counter()
    P, steps = run_d2(1)
    return P, steps, time.perf_counter() - t0


def test_criterion_09_two_dimensional(d2_run, record_property):
    P, steps, elapsed = d2_run
    slack = []
    for N in range(10, 201, 10):
        D = star_disc_dd(P.points[:N]).value
        slack.append(2 * math.log(N) ** 2 / math.sqrt(N) - D)
    values = np.array([s.certificates["theorem3"] for s in steps])
    frac = float(np.mean(values <= 1.0))
    mean_ok = bool(np.all(values <= np.array([s.index - 1 for s in steps]) + 1e-9))
    record_property("summary", f"min bound slack {min(slack):.4f}, theorem3 values <= 1: "
                               f"{frac:.1%} of {len(values)} (observational), "
                               f"all <= N-1: {mean_ok}, {elapsed:.1f}s")
    assert len(values) == 199
    assert min(slack) >= 0
    assert elapsed < 120.0


def test_criterion_10_determinism(d2_run, tmp_path, record_property):
    out = {}
    for jobs in (1, 8):
        P, _ = build_sequence(INIT_A, 250, GreedyConfig(n_jobs=jobs))
        io.write_points_csv(tmp_path / f"c2_{jobs}.csv", P.points)
        out[("c2", jobs)] = (tmp_path / f"c2_{jobs}.csv").read_bytes()
    io.write_points_csv(tmp_path / "c9_1.csv", d2_run[0].points)
    out[("c9", 1)] = (tmp_path / "c9_1.csv").read_bytes()
    io.write_points_csv(tmp_path / "c9_8.csv", run_d2(8)[0].points)
    out[("c9", 8)] = (tmp_path / "c9_8.csv").read_bytes()
    same2 = out[("c2", 1)] == out[("c2", 8)]
    same9 = out[("c9", 1)] == out[("c9", 8)]
    record_property("summary", f"criterion 2 CSVs identical: {same2}, criterion 9 CSVs identical: {same9}")
    assert same2 and same9
