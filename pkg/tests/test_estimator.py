import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from dynseq import GreedyConfig, GreedyEnergySequence, build_sequence, make_kernel
from dynseq.discrepancy import star_disc_dd, xn_embed


def test_fit_matches_functional_api():
    est = GreedyEnergySequence(n_points=30, certificate_multipliers=()).fit([0.5, 0.95])
    P, _ = build_sequence([0.5, 0.95], 30, GreedyConfig(certificate_multipliers=()))
    assert est.points_.tobytes() == P.points.tobytes()
    assert len(est.steps_) == 28 and est.n_initial_ == 2
    assert est.discrepancy() == star_disc_dd(xn_embed(P, 30)).value
    assert est.score() == -est.discrepancy()


def test_params_round_trip():
    est = GreedyEnergySequence(n_points=12, kernel="fourier", fourier_m_rule="mult:2")
    params = est.get_params()
    assert params["n_points"] == 12 and params["kernel"] == "fourier"
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(n_points=20)
    assert est.n_points == 20


def test_not_fitted_and_dimension_mismatch():
    with pytest.raises(NotFittedError):
        GreedyEnergySequence().discrepancy()
    with pytest.raises(ValueError):
        GreedyEnergySequence(dim=2).fit([0.5, 0.2, 0.1])


def test_two_dimensional_fit():
    est = GreedyEnergySequence(n_points=15, dim=2, kernel="fourier", engine="spectral")
    X = est.fit_transform([[0.5, 0.5]])
    assert X.shape == (15, 2)
    assert 0 < est.discrepancy(10) < 1


def test_make_kernel():
    assert make_kernel("logsin").variant == "logsin"
    assert make_kernel("fourier", 2, M=3).form == "one-plus-fourier"
    with pytest.raises(ValueError):
        make_kernel("cosine-series", 2)
    with pytest.raises(ValueError):
        make_kernel("cosine-series")


def test_docstring_example():
    seq = GreedyEnergySequence(n_points=8).fit([0.5, 1.0])
    assert sorted(round(v * 8) for v in seq.points_[:, 0]) == list(range(1, 9))
    assert np.all(seq.points_ <= 1.0)


def test_module_doctests():
    import doctest

    import dynseq.estimator

    assert doctest.testmod(dynseq.estimator).failed == 0
