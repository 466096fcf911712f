from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from fatpart.dse import DSEPoint, dse_partition_function, dse_points, dse_sample, dse_weight
from fatpart.partitions import Partition, fatten, schur_at_pinfty
from fatpart.symfun import SchurEvaluator, Specialization


def test_positions_roundtrip():
    pt = DSEPoint(Partition((3, 1)), 3)
    assert pt.x == (8, 4, 1)
    assert DSEPoint.from_positions(pt.x) == pt
    # neighbouring positions are at least 2 apart
    for q in dse_points(3, 12):
        assert all(a - b >= 2 for a, b in zip(q.x, q.x[1:]))
    with pytest.raises(ValueError):
        DSEPoint(Partition((1, 1, 1)), 2)
    with pytest.raises(ValueError):
        DSEPoint.from_positions((3, 3))


def test_weight_hand_values():
    assert dse_weight(Partition(()), 1) == 1
    assert dse_weight(Partition((1,)), 2) == Fraction(1, 2)
    assert dse_weight(Partition((2, 1)), 2) == Fraction(1, 80)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_weight_is_fat_schur_at_pinf(N):
    for pt in dse_points(N, 12):
        assert dse_weight(pt.lam, N) == schur_at_pinfty(fatten(pt.lam))


def test_borodin_series_direct_sum():
    p = Specialization.parse("miwa:+:1/2,1/3,1/5")
    ev = SchurEvaluator(p.to_power_sums(8))
    want = sum((ev(fatten(pt.lam)) for pt in dse_points(2, 8)), Fraction(0))
    assert dse_partition_function(p, 2, 8).value == want


def test_star_with_zero_exponent_is_borodin_on_scaled_spec():
    p = Specialization.parse("miwa:+:1/3")
    star = dse_partition_function(p, 1, 8, "star", p_exp=0)
    assert star.value == dse_partition_function(Specialization.scaled(2, p), 1, 8).value


def test_dse_errors():
    with pytest.raises(ValueError):
        dse_partition_function("pinf", 1, 4, kind="orthogonal")
    with pytest.raises(ValueError):
        dse_partition_function("pinf", 0, 4)


def test_sampler_frequencies():
    p = Specialization.parse("miwa:+:1/2,1/2,1/2")
    draws = dse_sample(p, 2, 8, 40000, seed=4)
    ev = SchurEvaluator(p.to_power_sums(8))
    pts = dse_points(2, 8)
    w = np.array([float(ev(fatten(q.lam))) for q in pts])
    w /= w.sum()
    counts = Counter(draws)
    for q, prob in zip(pts, w):
        freq = counts[q.lam] / 40000
        assert abs(freq - prob) <= 4 * np.sqrt(prob * (1 - prob) / 40000) + 1e-4


def test_sampler_determinism_and_errors():
    a = dse_sample("miwa:+:1/2,1/3", 1, 6, 50, seed=9)
    assert a == dse_sample("miwa:+:1/2,1/3", 1, 6, 50, seed=9)
    assert a != dse_sample("miwa:+:1/2,1/3", 1, 6, 50, seed=10)
    with pytest.raises(ValueError):
        # s_(1,1) = (p1^2 - p2) / 2 = -1/2 is not a probability weight
        dse_sample("explicit:0,1,0,0,0,0", 1, 6, 5, seed=0)
