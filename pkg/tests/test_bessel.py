import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from twomodebec.bessel import bessel_j0


def test_matches_scipy_on_dense_grid():
    xs = np.linspace(-20.0, 20.0, 40001)
    ours = np.array([bessel_j0(x) for x in xs])
    ref = scipy.special.j0(xs)
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_special_values():
    assert bessel_j0(0.0) == 1.0
    # first zero of J0
    x1 = 2.404825557695773
    assert abs(bessel_j0(x1)) < 1e-12
    # both sides of the series/asymptotic switch at |x| = 8
    for x in (7.999999, 8.0, 8.000001):
        assert abs(bessel_j0(x) - scipy.special.j0(x)) < 1e-13


def test_even_function():
    for x in (0.3, 1.7, 7.99, 8.01, 15.5):
        assert bessel_j0(-x) == bessel_j0(x)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        bessel_j0(bad)


@given(st.floats(min_value=-100.0, max_value=100.0))
def test_bounded_by_one(x):
    assert abs(bessel_j0(x)) <= 1.0 + 1e-15
