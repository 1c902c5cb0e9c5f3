import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sweep_vel import InvariantViolation, TimeFunction


def test_polynomial_rows_per_degree():
    f = TimeFunction.polynomial([[0.0, 0.0], [0.0, 1.0]])
    assert f.dim == 2
    assert_allclose(f(0.75), [0.0, 0.75])


def test_scalar_polynomial_from_flat_list():
    f = TimeFunction.polynomial([1.0, 0.0, 2.0])
    assert f.scalar(3.0) == pytest.approx(19.0)


def test_sinusoid_componentwise():
    f = TimeFunction.sinusoid(amplitude=[1.0, 0.5], frequency=[1.0, 2.0], offset=[0.0, 1.0])
    assert_allclose(f(0.3), [math.sin(0.3), 1.0 + 0.5 * math.sin(0.6)])


def test_samples_interpolate_and_clamp():
    f = TimeFunction.samples([0.0, 1.0], [[0.0], [2.0]])
    assert f.scalar(0.25) == pytest.approx(0.5)
    assert f.scalar(5.0) == pytest.approx(2.0)


def test_piecewise_switches_at_breakpoints():
    f = TimeFunction.piecewise([0.0, 1.0, 2.0], [TimeFunction.polynomial([0.0, 0.0, 0.5]),
                                                 TimeFunction.polynomial([-0.5, 1.0])])
    assert f.scalar(0.5) == pytest.approx(0.125)
    assert f.scalar(1.0) == pytest.approx(0.5)
    assert f.scalar(1.5) == pytest.approx(1.0)


def test_piecewise_rejects_unsorted_breakpoints():
    with pytest.raises(InvariantViolation, match="strictly increasing"):
        TimeFunction.piecewise([0.0, 2.0, 1.0], [TimeFunction.zero(1), TimeFunction.zero(1)])


def test_zero_needs_dimension():
    with pytest.raises(InvariantViolation):
        TimeFunction.from_dict({"kind": "zero"})


def test_sup_norm():
    assert TimeFunction.constant([3.0, 4.0]).sup_norm(1.0) == pytest.approx(5.0)
    assert TimeFunction.zero(2).sup_norm(1.0) == 0.0


def test_dict_form_rebuilds():
    f = TimeFunction.sinusoid(amplitude=[0.0, 1.0], frequency=[1.0, 1.0], phase=[0.1, 0.2])
    rebuilt = TimeFunction.from_dict(f.to_dict(), dim=2)
    times = np.linspace(0.0, 1.0, 7)
    assert_allclose(rebuilt.sample(times), f.sample(times))
