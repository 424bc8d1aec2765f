"""Exact rational polynomial arithmetic."""

import random
from fractions import Fraction

import pytest

from doflab.alphapoly import (
    ALPHA,
    ONE,
    ONE_MINUS_ALPHA,
    AffineAlpha,
    PolyAlpha,
    as_fraction,
    format_fraction,
)


def test_affine_eval_is_exact():
    f = AffineAlpha(Fraction(6, 11), Fraction(5, 11))
    assert f.at(Fraction(1, 2)) == Fraction(17, 22)
    assert f.at(0) == Fraction(6, 11)
    assert f.at(1) == 1


def test_affine_arithmetic():
    f = ONE_MINUS_ALPHA + ALPHA
    assert f == ONE
    g = (ALPHA * 3) / 2 - AffineAlpha.const(Fraction(1, 2))
    assert g.at(Fraction(1, 3)) == 0
    assert (-g).at(1) == -1


def test_affine_nonneg_on_unit_checks_endpoints_only():
    assert ONE_MINUS_ALPHA.is_nonneg_on_unit()
    assert not (ALPHA - ONE).is_nonneg_on_unit() or (ALPHA - ONE).at(1) == 0
    assert not AffineAlpha(Fraction(-1, 10), Fraction(2)).is_nonneg_on_unit()


def test_affine_crossing():
    x = ALPHA.crossing(ONE_MINUS_ALPHA)
    assert x == Fraction(1, 2)
    assert ALPHA.crossing(ALPHA) is None


def test_affine_random_eval_consistency():
    rng = random.Random(4)
    for _ in range(200):
        f = AffineAlpha(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                        Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        g = AffineAlpha(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                        Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        a = Fraction(rng.randint(0, 12), 12)
        assert (f + g).at(a) == f.at(a) + g.at(a)
        assert (f - g).at(a) == f.at(a) - g.at(a)
        assert (f * 3).at(a) == 3 * f.at(a)


def test_affine_serialization_round_trip():
    f = AffineAlpha(Fraction(3, 7), Fraction(-2, 5))
    assert AffineAlpha.from_doc(f.to_doc()) == f
    assert str(f) == "3/7 - 2/5*a"


def test_poly_products_and_eval():
    two_plus = PolyAlpha.affine(2, 1)
    three_plus = PolyAlpha.affine(3, 1)
    prod = two_plus * three_plus
    assert prod.coeffs == (Fraction(6), Fraction(5), Fraction(1))
    assert prod.at(Fraction(1, 2)) == Fraction(35, 4)


def test_poly_degree_cap():
    quad = PolyAlpha.affine(0, 1) * PolyAlpha.affine(0, 1)
    with pytest.raises(ValueError):
        _ = quad * PolyAlpha.affine(0, 1)


def test_poly_round_trip_and_str():
    p = PolyAlpha((Fraction(6), Fraction(5), Fraction(1)))
    assert PolyAlpha.from_doc(p.to_doc()) == p
    assert str(p) == "6 + 5*a + 1*a^2"


def test_fraction_parsing_and_formatting():
    assert as_fraction("17/22") == Fraction(17, 22)
    assert as_fraction(3) == 3
    assert format_fraction(Fraction(4, 2)) == "2"
    with pytest.raises(TypeError):
        as_fraction(0.5)
