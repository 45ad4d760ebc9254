from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcover.cover import (CoverDivisor, DoubleCover, divisor_image, h0_kL, involution_conjugate, isotypic_basis,
                          pullback_splits)
from dcover.errors import ComponentDivisorError
from dcover.gen import GenConfig, random_divisor
from dcover.polyring import GF, QQ, Ring

P2 = Ring.projective(2, QQ)
x0, x1, x2 = P2.gens()
CONIC = DoubleCover(2, 1, x0 ** 2 + x1 ** 2 + x2 ** 2)
SEXTIC = DoubleCover(2, 3, x0 ** 6 + x1 ** 6 + x2 ** 6)


def test_isotypic_sizes():
    plus, minus = isotypic_basis(SEXTIC, 3)
    assert (len(plus), len(minus)) == (10, 1)
    assert h0_kL(SEXTIC, 3) == 11
    plus, minus = isotypic_basis(SEXTIC, 6)
    assert (len(plus), len(minus)) == (28, 10)
    assert h0_kL(SEXTIC, 6) - 1 == 37
    assert isotypic_basis(SEXTIC, 2)[1] == []


def test_image_of_quadric_divisor():
    w = CoverDivisor(CONIC, x0 * x1, x2, 2)
    g, ci = divisor_image(w)
    assert g == (x0 * x1) ** 2 - (x0 ** 2 + x1 ** 2 + x2 ** 2) * x2 ** 2
    assert (ci.fa, ci.fb) == (x2, x0 * x1)
    assert pullback_splits(w)


def test_image_with_empty_double_locus():
    fd = x0 ** 2 - x1 * x2
    cover = DoubleCover(2, 2, x0 ** 4 + x1 ** 4 + x2 ** 4)
    g, ci = divisor_image(CoverDivisor(cover, fd, P2.one(), 2))
    assert g == fd ** 2 - cover.g2d
    assert ci.is_empty_locus()


def test_involution():
    w = CoverDivisor(CONIC, x0 * x1, x2, 2)
    assert involution_conjugate(involution_conjugate(w)) == w
    assert divisor_image(involution_conjugate(w))[0] == divisor_image(w)[0]
    fixed = CoverDivisor(CONIC, x0 * x1, P2.zero(), 2)
    assert involution_conjugate(fixed) == fixed


def test_component_divisors_rejected():
    with pytest.raises(ComponentDivisorError):
        divisor_image(CoverDivisor(CONIC, x0 * x1, P2.zero(), 2))
    with pytest.raises(ComponentDivisorError):
        divisor_image(CoverDivisor(CONIC, P2.zero(), x0, 2))


def test_degree_validation():
    with pytest.raises(ValueError):
        CoverDivisor(CONIC, x0, x2, 2)
    with pytest.raises(ValueError):
        DoubleCover(2, 1, x0 ** 3)


@settings(max_examples=25)
@given(st.sampled_from([(2, 1, 2), (2, 2, 3), (2, 3, 4), (3, 1, 3), (3, 2, 2)]), st.integers(0, 10 ** 6),
       st.sampled_from([QQ, GF(101)]))
def test_pullback_splits_random(ndk, seed, field):
    n, d, k = ndk
    w = random_divisor(n, d, k, GenConfig(seed=seed, field=field))
    assert pullback_splits(w)
    assert divisor_image(involution_conjugate(w))[0] == divisor_image(w)[0]
