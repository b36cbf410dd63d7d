import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from oracles import brute_1d, naive_2d

from dynseq import (
    EmptySet,
    InsufficientPoints,
    UnsupportedDimension,
    erdos_turan_diag,
    erdos_turan_koksma_diag,
    hammersley_set,
    star_disc_1d,
    star_disc_dd,
    weyl_sum,
    xn_embed,
)
from dynseq.discrepancy import local_discrepancy


def test_1d_examples():
    assert star_disc_1d([0.5]).value == 0.5
    assert star_disc_1d([1 / 8, 3 / 8, 5 / 8, 7 / 8]).value == pytest.approx(0.125)
    assert star_disc_1d([0.25, 0.75]).value == pytest.approx(0.25)
    assert brute_1d([0.25, 0.75]) == pytest.approx(0.25, abs=1e-6)


def test_1d_handles_the_point_one():
    assert star_disc_1d([0.5, 1.0]).value == pytest.approx(0.5)
    with pytest.raises(EmptySet):
        star_disc_1d([])


def test_1d_matches_threshold_brute_force():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        x = rng.random(rng.integers(1, 201))
        assert abs(star_disc_1d(x).value - brute_1d(x)) <= 1e-5


def test_2d_matches_naive_enumeration():
    rng = np.random.default_rng(7)
    for i in range(50):
        n = int(rng.integers(1, 41))
        P = rng.random((n, 2))
        if i % 5 == 0:
            # coordinate ties and boundary values
            P = np.round(P * 8) / 8
        assert abs(star_disc_dd(P).value - naive_2d(P)) <= 1e-12


def test_2d_single_point():
    rep = star_disc_dd([[0.5, 0.5]])
    # closed box at the point itself: 1 - 1/4
    assert rep.value == pytest.approx(0.75)
    assert rep.mode == "closed"
    assert naive_2d([[0.5, 0.5]]) == pytest.approx(0.75)


def test_2d_two_point_embedding_against_grid_oracle():
    P = xn_embed([0.5, 0.95], 2).points
    np.testing.assert_array_equal(P, [[0.5, 0.5], [1.0, 0.95]])
    t = np.arange(2001) / 2000
    cx = (P[:, 0][None, :] <= t[:, None]).astype(float)
    cy = (P[:, 1][None, :] <= t[:, None]).astype(float)
    grid = np.max(np.abs(cx @ cy.T / 2 - np.outer(t, t)))
    assert abs(star_disc_dd(P).value - grid) <= 1e-3


def test_hammersley_100_near_published_value():
    assert abs(star_disc_dd(hammersley_set(100)).value - 0.026) <= 0.002


def test_3d_matches_naive():
    rng = np.random.default_rng(5)
    for _ in range(10):
        P = rng.random((int(rng.integers(1, 15)), 3))
        best = 0.0
        cands = [sorted(set(P[:, j]) | {1.0}) for j in range(3)]
        for c in itertools.product(*cands):
            c = np.array(c)
            vol = np.prod(c)
            best = max(best, np.sum(np.all(P <= c, axis=1)) / len(P) - vol,
                       vol - np.sum(np.all(P < c, axis=1)) / len(P))
        assert abs(star_disc_dd(P).value - best) <= 1e-12


def test_dimension_guards():
    with pytest.raises(UnsupportedDimension):
        star_disc_dd(np.full((3, 4), 0.5))
    with pytest.raises(EmptySet):
        star_disc_dd(np.zeros((0, 2)))


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 30), st.integers(1, 3)),
              elements=st.floats(0, 1)))
def test_witness_reproduces_value(P):
    rep = star_disc_1d(P) if P.shape[1] == 1 else star_disc_dd(P)
    assert 0.0 <= rep.value <= 1.0
    assert abs(local_discrepancy(P, rep.corner, rep.mode) - rep.value) <= 1e-12


def test_witness_drift_after_append():
    rng = np.random.default_rng(9)
    for _ in range(30):
        P = rng.random((int(rng.integers(2, 40)), 2))
        rep = star_disc_dd(P)
        Q = np.vstack([P, rng.random((1, 2))])
        before = local_discrepancy(P, rep.corner, rep.mode)
        after = local_discrepancy(Q, rep.corner, rep.mode)
        assert abs(after - before) <= 1 / len(P) + 1e-12


def test_xn_embed():
    assert xn_embed([0.3, 0.7], 1).points.tolist() == [[1.0, 0.3]]
    with pytest.raises(InsufficientPoints):
        xn_embed([0.3], 2)


def test_weyl_sum_examples():
    eq4 = np.arange(1, 5) / 4
    assert weyl_sum(eq4, 1) == pytest.approx(0.0, abs=1e-15)
    assert weyl_sum(eq4, 4) == pytest.approx(1.0, abs=1e-12)
    assert weyl_sum([0.5], 1) == pytest.approx(1.0)


@given(arrays(np.float64, st.integers(1, 40), elements=st.floats(0, 1)), st.integers(-50, 50))
def test_weyl_sum_in_unit_interval(x, k):
    assert 0.0 <= weyl_sum(x, k) <= 1.0


def test_erdos_turan_examples():
    N = 12
    eq = np.arange(1, N + 1) / N
    assert erdos_turan_diag(eq, N - 1) == pytest.approx(1 / (N - 1), abs=1e-12)
    assert erdos_turan_diag([0.5], 1) == pytest.approx(2.0)


def test_erdos_turan_koksma_examples():
    assert erdos_turan_koksma_diag([[0.3, 0.8]], 1) == pytest.approx(3.0)
    many = np.tile([[0.3, 0.8]], (7, 1))
    assert erdos_turan_koksma_diag(many, 2) == pytest.approx(erdos_turan_koksma_diag([[0.3, 0.8]], 2))


def test_erdos_turan_koksma_diagonal_set():
    N, K = 8, 3
    P = np.column_stack([np.arange(1, N + 1) / N] * 2)
    expected = 0.0
    for k1, k2 in itertools.product(range(-K, K + 1), repeat=2):
        if (k1, k2) != (0, 0) and (k1 + k2) % N == 0:
            expected += 1 / (max(1, 2 * abs(k1)) * max(1, 2 * abs(k2)))
    assert erdos_turan_koksma_diag(P, K) == pytest.approx(expected, abs=1e-12)


def test_erdos_turan_koksma_cost_guard():
    with pytest.raises(ValueError):
        erdos_turan_koksma_diag(np.full((2, 3), 0.5), 200)


def test_erdos_turan_dominates_discrepancy_on_greedy_run():
    from dynseq import GreedyConfig, build_sequence

    P, _ = build_sequence([0.5, 0.95], 100, GreedyConfig(certificate_multipliers=()))
    assert erdos_turan_diag(P, 100) >= star_disc_1d(P).value
    assert math.isfinite(erdos_turan_diag(P, 100))
