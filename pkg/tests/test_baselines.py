import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynseq import (
    BaselineSpec,
    halton,
    halton_set,
    hammersley_set,
    kronecker_set,
    radical_inverse,
)
from dynseq.baselines import equispaced, van_der_corput


def test_radical_inverse_examples():
    assert radical_inverse(3, 2) == 0.75
    assert radical_inverse(4, 2) == 0.125
    assert radical_inverse(1, 3) == pytest.approx(1 / 3, abs=1e-16)
    assert radical_inverse(0, 5) == 0.0


@given(st.integers(0, 10**6), st.integers(2, 17))
def test_radical_inverse_matches_digit_string(n, b):
    # oracle: read the base-b digit string of n backwards after the radix point
    digits = []
    m = n
    while m:
        m, d = divmod(m, b)
        digits.append(d)
    expected = sum(d * b ** -(i + 1) for i, d in enumerate(digits))
    assert radical_inverse(n, b) == pytest.approx(expected, abs=1e-15)
    assert 0.0 <= radical_inverse(n, b) < 1.0


def test_halton_examples():
    assert halton(1) == pytest.approx((0.5, 1 / 3))
    assert halton(2) == pytest.approx((0.25, 2 / 3))
    with pytest.raises(ValueError):
        halton_set(4, (2, 4))


def test_hammersley_small():
    P = hammersley_set(4).points
    np.testing.assert_array_equal(P, [[0.25, 0.5], [0.5, 0.25], [0.75, 0.75], [1.0, 0.125]])
    assert hammersley_set(4, index_origin=0).points[0].tolist() == [0.0, 0.0]


def test_kronecker_examples():
    P = kronecker_set(3).points
    assert P[0, 1] == pytest.approx(math.sqrt(133) - 11, abs=1e-12)
    assert P[0, 1] == pytest.approx(0.5325626, abs=1e-7)
    np.testing.assert_allclose(kronecker_set(4, alpha=0.5).points[:, 1], [0.5, 0.0, 0.5, 0.0])
    scaled = kronecker_set(10, scaled=True).points[:, 1]
    assert scaled[0] == pytest.approx(math.sqrt(133) / 10 - 1, abs=1e-12)


def test_van_der_corput_and_equispaced():
    assert van_der_corput(4).tolist() == [0.5, 0.25, 0.75, 0.125]
    assert van_der_corput(2, index_origin=0).tolist() == [0.0, 0.5]
    assert equispaced(4).points[:, 0].tolist() == [0.25, 0.5, 0.75, 1.0]


def test_baseline_spec():
    assert BaselineSpec("hammersley").generate(8).points.shape == (8, 2)
    assert BaselineSpec("van_der_corput", base=3).generate(5).dim == 1
    assert BaselineSpec("halton", bases=(2, 3, 5)).generate(7).dim == 3
    with pytest.raises(ValueError):
        BaselineSpec("sobol")
    with pytest.raises(ValueError):
        BaselineSpec("halton", index_origin=2)


@pytest.mark.parametrize("N", [1, 7, 64, 250])
def test_baselines_inside_unit_cube(N):
    for P in (halton_set(N), hammersley_set(N), kronecker_set(N)):
        assert P.points.shape == (N, 2)
        assert np.all((P.points >= 0) & (P.points <= 1))
