"""Segre classes from projective degrees."""

import logging
import random

import pytest

from biratkit import families
from biratkit.errors import UnitIdeal, ZeroIdeal
from biratkit.groebner import Ideal
from biratkit.hilbert import dim_degree
from biratkit.polynomial import PolynomialRing
from biratkit.random_source import RandomSource
from biratkit.ratmap import DETERMINISTIC, PROBABILISTIC, RationalMap, inverse_map, projective_degrees
from biratkit.segre import (
    ChowClass,
    common_degree_system,
    format_chow,
    segre_class,
    segre_class_in_variety,
    segre_from_degrees,
)

from conftest import P, random_poly, ring

MODES = [PROBABILISTIC, DETERMINISTIC]


def point_ideal(R, pt):
    x = R.gens()
    n = len(x)
    return Ideal(R, [x[i] * pt[j] - x[j] * pt[i] for i in range(n) for j in range(i + 1, n)])


def assert_vanishing_range(c, dim_b):
    for k, v in enumerate(c.coeffs):
        if k > dim_b:
            assert v == 0


def test_formatting():
    assert format_chow(ChowClass(6, (-680, 228, -60, 10, 0, 0, 0))) == "- 680*H^6 + 228*H^5 - 60*H^4 + 10*H^3"
    assert format_chow(ChowClass(2, (0, 0, 0))) == "0"
    with pytest.raises(ValueError):
        ChowClass(2, (1, 2))


def test_formula_by_hand():
    # point in P^2: degrees (1, 1, 0), delta 1
    assert segre_from_degrees(2, 2, 1, [1, 1, 0], 0).coeffs == (1, 0, 0)
    # base locus of the Cremona involution: degrees (1, 2, 1), delta 2
    assert segre_from_degrees(2, 2, 2, [1, 2, 1], 0).coeffs == (3, 0, 0)


def test_common_degree_system():
    R = ring(3)
    x0, x1, x2 = R.gens()
    forms, delta = common_degree_system(Ideal(R, [x0, x1 * x1]))
    assert delta == 2 and len(forms) == 4
    assert common_degree_system(Ideal(R, [x0]))[1] == 1
    with pytest.raises(ZeroIdeal):
        common_degree_system(Ideal(R, []))
    with pytest.raises(UnitIdeal):
        common_degree_system(Ideal(R, [R.one()], check=False))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("mode", MODES)
def test_point_gives_top_power(n, mode):
    rng = random.Random(n)
    R = ring(n + 1)
    c = segre_class(point_ideal(R, [rng.randrange(1, P) for _ in range(n + 1)]), mode, RandomSource(n))
    assert c.terms() == [(n, 1)]


@pytest.mark.parametrize("mode", MODES)
def test_cremona_base_points(mode):
    sigma = families.cremona()
    c = segre_class(Ideal(sigma.source_ring, sigma.forms), mode, RandomSource(0))
    assert str(c) == "+ 3*H^2"


@pytest.mark.parametrize("mode", MODES)
def test_plane_conic(mode):
    # s(C, P^2) = [C] - C^2 = 2H - 4H^2
    R = ring(3)
    x0, x1, x2 = R.gens()
    assert segre_class(Ideal(R, [x0 * x2 - x1 * x1]), mode).coeffs == (-4, 2, 0)


@pytest.mark.parametrize("mode", MODES)
def test_conic_on_quadric_surface(mode):
    # C = Y.H on a smooth quadric Y: C.C = 2, so s(C, Y) = [C] - C^2 = 2H^2 - 2H^3
    R = ring(4)
    x0, x1, x2, x3 = R.gens()
    Y = Ideal(R, [x0 * x3 - x1 * x2])
    C = Ideal(R, [x0 + x1 + x2 + x3])
    assert segre_class_in_variety(Y, C, mode).coeffs == (-2, 2, 0, 0)


@pytest.mark.parametrize("mode", MODES)
def test_twisted_cubic(mode):
    # s(C, P^3) = [C] - c1(N_C) = 3H^2 - (4*3 + 2g - 2)H^3 with g = 0
    R = ring(4)
    a, b, c, d = R.gens()
    C = Ideal(R, [a * c - b * b, b * d - c * c, a * d - b * c])
    assert segre_class(C, mode).coeffs == (-10, 3, 0, 0)


def test_cubo_cubic_base_curve():
    # base locus: a curve of degree 6 and genus 3, deg N = 4*6 + 2*3 - 2 = 28
    phi = families.cubo_cubic()
    B = Ideal(phi.source_ring, phi.forms)
    assert dim_degree(B) == (1, 6)
    assert segre_class(B).coeffs == (-28, 6, 0, 0)


def test_b_containing_x_gives_fundamental_class():
    R = ring(4)
    x0, x1, x2, x3 = R.gens()
    Y = Ideal(R, [x0 * x3 - x1 * x2])
    assert segre_class_in_variety(Y, Y).coeffs == (0, 0, 2, 0)


def test_empty_base_scheme(caplog):
    R = ring(3)
    with caplog.at_level(logging.WARNING):
        c = segre_class(Ideal(R, R.gens()))
    assert c.is_zero()
    assert "empty" in caplog.text


@pytest.mark.property
@pytest.mark.parametrize("seed", range(20))
def test_modes_agree_and_vanish_above_dim_b(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    R = ring(n + 1)
    k = rng.randint(2, n)
    B = Ideal(R, [random_poly(R, rng.choice([1, 2]), rng, 0.6) for _ in range(k)])
    dim_b = dim_degree(B)[0]
    c_det = segre_class(B, DETERMINISTIC)
    c_prob = segre_class(B, PROBABILISTIC, RandomSource(seed))
    assert c_det == c_prob
    assert_vanishing_range(c_det, dim_b)


@pytest.mark.parametrize("seed", range(4))
def test_restriction_speedup_is_consistent(seed):
    phi = families.cubo_cubic(seed)
    fast = projective_degrees(phi, PROBABILISTIC, RandomSource(seed), restrict=True)
    slow = projective_degrees(phi, PROBABILISTIC, RandomSource(seed + 100), restrict=False)
    assert fast == slow
    assert segre_from_degrees(3, 3, 3, fast, 1) == segre_from_degrees(3, 3, 3, slow, 1)


@pytest.mark.slow
def test_inverse_base_locus_in_grassmannian():
    # base locus of the inverse of the P^6 --> G(2,4) map, inside G(2,4)
    phi = families.example2()
    psi = inverse_map(phi)
    c = segre_class_in_variety(phi.J, Ideal(phi.target_ring, psi.forms))
    assert str(c) == "+ 728*H^9 - 588*H^8 + 276*H^7 - 98*H^6 + 24*H^5"
