import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sweep_vel import check_gronwall, equality_case, gronwall_bound
from sweep_vel.engine.analysis.gronwall import cumulative_trapezoid


def test_bound_values():
    assert gronwall_bound(0.0, 2.0, 1.0) == 0.0
    assert gronwall_bound(1.0, 1.0, 1.0) == pytest.approx(math.e - 1.0)
    assert gronwall_bound(0.5, 2.0, 1.0) == pytest.approx(0.25 * (math.exp(2.0) - 1.0))


def test_bound_requires_nonzero_rate():
    with pytest.raises(ValueError):
        gronwall_bound(1.0, 0.0, 1.0)


def test_cumulative_trapezoid():
    assert_allclose(cumulative_trapezoid(np.ones(3), 0.5), [0.0, 0.5, 1.0])
    assert_allclose(cumulative_trapezoid(np.array([0.0, 1.0, 2.0]), 1.0), [0.0, 0.5, 2.0])


def test_zero_input_holds():
    check = check_gronwall(np.zeros(101), 0.1, 1.0, 0.01)
    assert check.hypothesis_holds
    assert check.conclusion_holds
    assert check.final_integral == 0.0


def test_saturating_input_is_nearly_tight():
    times = np.linspace(0.0, 1.0, 2001)
    check = check_gronwall(np.exp(times), 1.0, 1.0, times[1] - times[0])
    assert check.hypothesis_holds
    assert check.conclusion_holds
    assert check.final_integral == pytest.approx(math.e - 1.0, abs=1e-6)


def test_large_constant_breaks_hypothesis():
    check = check_gronwall(np.full(101, 10.0), 1.0, 0.01, 0.01)
    assert not check.hypothesis_holds
    assert not check.conclusion_holds
    assert check.max_hypothesis_excess > 8.0


def test_zero_rate_uses_linear_bound():
    check = check_gronwall(np.full(11, 2.0), 2.0, 0.0, 0.1)
    assert check.hypothesis_holds
    assert check.conclusion_holds
    assert check.final_bound == pytest.approx(2.0)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (0.5, 2.0)])
def test_equality_cases(a, b):
    case = equality_case(a, b)
    assert abs(case["gap"]) <= 1e-4
    assert case["bound"] == pytest.approx(gronwall_bound(a, b, 1.0))
    assert case["check"]["hypothesis_holds"]
    assert case["check"]["conclusion_holds"]
