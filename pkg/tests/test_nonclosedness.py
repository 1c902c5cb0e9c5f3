import math

import numpy as np
import pytest

from sweep_vel import nonclosedness_demo
from sweep_vel.engine.analysis.nonclosedness import c0_gap, capped_function, limit_function


@pytest.fixture(scope="module")
def default_report():
    return nonclosedness_demo()


def test_default_table(default_report):
    assert [row["k"] for row in default_report.rows()] == [10, 100, 1000]
    assert default_report.passed


def test_c0_distance_within_bound(default_report):
    for row in default_report.rows_:
        assert row.c0_distance <= 2.0 / row.k ** 2
        assert row.w11_norm == pytest.approx(row.l1_norm + row.variation)


def test_w11_grows_while_c0_shrinks(default_report):
    assert default_report.w11_strictly_increasing
    distances = [row.c0_distance for row in default_report.rows_]
    assert distances == sorted(distances, reverse=True)


def test_limit_is_flagged_not_absolutely_continuous(default_report):
    document = default_report.to_dict()
    assert document["limit_absolutely_continuous"] is False
    assert document["notes"]


def test_capped_function_joins_the_limit():
    k = 7
    assert capped_function(k, 1.0 / k) == pytest.approx(limit_function(1.0 / k))
    assert capped_function(k, 0.0) == 0.0
    assert limit_function(np.array([0.0]))[0] == 0.0
    assert capped_function(k, 0.5) == pytest.approx(0.25 * math.sin(4.0))


def test_small_k_gap():
    assert c0_gap(3) <= 2.0 / 9.0


def test_order_is_kept():
    report = nonclosedness_demo([20, 5])
    assert [row.k for row in report.rows_] == [20, 5]
    assert not report.w11_strictly_increasing
    assert not report.passed


@pytest.mark.parametrize("k_list, quad_points", [([], 8), ([10, 0], 8), ([10], 0)])
def test_rejects_bad_input(k_list, quad_points):
    with pytest.raises(ValueError):
        nonclosedness_demo(k_list, quad_points)
