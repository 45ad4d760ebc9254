from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from conftest import forms
from dcover.errors import BadPrimeError, CapExceededError
from dcover.points import SINGULAR, all_points, enumerate_points, jacobian_sample, projective_size
from dcover.polyring import GF, QQ, Ring, evaluate

P2_F3 = Ring.projective(2, GF(3))


def test_line_has_q_plus_one_points():
    x0, _, _ = P2_F3.gens()
    assert len(enumerate_points([x0], 3)) == 4


def test_coordinate_point():
    R = Ring.projective(2, GF(5))
    x0, x1, _ = R.gens()
    assert enumerate_points([x0, x1], 5) == [(0, 0, 1)]


def test_constant_has_no_points():
    assert enumerate_points([P2_F3.one()], 3) == []


def test_all_points_counts_and_normalized():
    for n, q in [(1, 2), (2, 3), (3, 5)]:
        pts = all_points(n, q)
        assert len(pts) == projective_size(n, q)
        assert len({tuple(p) for p in pts}) == len(pts)
        for p in pts:
            assert next(x for x in p if x) == 1


def test_cap():
    with pytest.raises(CapExceededError):
        all_points(4, 101, cap=10 ** 6)


def test_bad_prime():
    R = Ring.projective(2, QQ)
    x0, x1, _ = R.gens()
    with pytest.raises(BadPrimeError):
        enumerate_points([x0.scale(QQ("1/7")) + x1], 7)
    with pytest.raises(BadPrimeError):
        jacobian_sample([x0], 9)


def test_random_lines_find_singularity():
    R = Ring.projective(3, GF(10007))
    x0, x1, x2, x3 = R.gens()
    # every point of the double plane x0^2 is singular
    v = jacobian_sample([x0 ** 2], 10007, trials=3, seed=1, exhaustive_cap=100)
    assert v.method.startswith("random-lines") and v.status == SINGULAR and v.point[0] == 0
    smooth = jacobian_sample([x0 * x1 - x2 * x3], 10007, trials=30, seed=1, exhaustive_cap=100)
    assert smooth.ok


@settings(max_examples=100)
@given(forms(P2_F3, 2))
def test_enumeration_matches_brute_force(p):
    pts = set(enumerate_points([p], 3, n=2))
    brute = set()
    for v in itertools.product(range(3), repeat=3):
        if any(v) and next(x for x in v if x) == 1 and evaluate(p, v) == 0:
            brute.add(v)
    assert pts == brute
