"""Complexified field: homogeneous decomposition, coordinate series,
Cauchy-Riemann checks, disc evaluation and difference quotients."""

import math
import random
from fractions import Fraction

import pytest

from puiseux import (
    BoxPoint,
    ComplexPuiseux,
    DiscPoint,
    IndeterminateMembership,
    PuiseuxSeries,
    SeriesM,
    SeriesU,
    coordinate_series,
    cr_check,
    diff_quotient_check,
    equal_through,
    eval_box,
    eval_disc,
    homog_decompose,
    in_disc,
)

from _support import random_inbox_coord, random_poly_series, random_small_fraction

T = PuiseuxSeries.t()


def _complex_pair_power(n: int) -> tuple[SeriesM, SeriesM]:
    """Oracle: (x + iy)**n by repeated complex multiplication of
    polynomial pairs, no binomial shortcuts."""
    re = SeriesM.variable(2, 1)
    im = SeriesM.variable(2, 2)
    out_re, out_im = re, im
    for _ in range(n - 1):
        out_re, out_im = out_re * re - out_im * im, out_re * im + out_im * re
    return out_re, out_im


# ----------------------------------------------------------------------
# homogeneous decomposition


def test_homog_decompose_small_cases():
    q1, q2 = homog_decompose(1)
    assert q1.terms_through_degree(2) == {(1, 0): Fraction(1)}
    assert q2.terms_through_degree(2) == {(0, 1): Fraction(1)}
    q1, q2 = homog_decompose(2)
    assert q1.terms_through_degree(3) == {(2, 0): Fraction(1), (0, 2): Fraction(-1)}
    assert q2.terms_through_degree(3) == {(1, 1): Fraction(2)}
    q1, q2 = homog_decompose(3)
    assert q1.terms_through_degree(4) == {(3, 0): Fraction(1), (1, 2): Fraction(-3)}
    assert q2.terms_through_degree(4) == {(2, 1): Fraction(3), (0, 3): Fraction(-1)}


def test_homog_decompose_reassembles_powers():
    for n in range(1, 11):
        q1, q2 = homog_decompose(n)
        o1, o2 = _complex_pair_power(n)
        assert q1.agree_through_degree(o1, n + 1)
        assert q2.agree_through_degree(o2, n + 1)


def test_homog_decompose_multiplicativity():
    for a in range(1, 10):
        for b in range(1, 11 - a):
            a1, a2 = homog_decompose(a)
            b1, b2 = homog_decompose(b)
            prod_re = a1 * b1 - a2 * b2
            prod_im = a1 * b2 + a2 * b1
            c1, c2 = homog_decompose(a + b)
            assert prod_re.agree_through_degree(c1, a + b + 1)
            assert prod_im.agree_through_degree(c2, a + b + 1)


def test_homog_decompose_rejects_zero():
    with pytest.raises(ValueError):
        homog_decompose(0)


# ----------------------------------------------------------------------
# coordinate series


def test_coordinate_series_identity():
    p1, p2 = coordinate_series(SeriesU.monomial(1))
    assert p1.terms_through_degree(3) == {(1, 0): Fraction(1)}
    assert p2.terms_through_degree(3) == {(0, 1): Fraction(1)}


def test_coordinate_series_square():
    p1, p2 = coordinate_series(SeriesU.monomial(2))
    assert p1.terms_through_degree(3) == {(2, 0): Fraction(1), (0, 2): Fraction(-1)}
    assert p2.terms_through_degree(3) == {(1, 1): Fraction(2)}


def test_coordinate_series_factorial_slices():
    # slice-by-slice assembly: 1*q1(1) + 1*q1(2) + 2*q1(3) + ...
    p1, _ = coordinate_series(SeriesU.factorial_terms())
    assert p1.terms_through_degree(3) == {
        (1, 0): Fraction(1),
        (2, 0): Fraction(1),
        (0, 2): Fraction(-1),
        (3, 0): Fraction(2),
        (1, 2): Fraction(-6),
    }


def test_coordinate_series_assembly_oracle():
    # oracle route: sum coeff(n) * homog_decompose(n) per degree slice
    rng = random.Random(55)
    for _ in range(6):
        p = random_poly_series(rng, 9)
        p1, p2 = coordinate_series(p)
        o1 = SeriesM.constant(2, p.coeff(0))
        o2 = SeriesM.zero(2)
        for n in range(1, 13):
            c = p.coeff(n)
            if c:
                q1, q2 = homog_decompose(n)
                o1 = o1 + q1.scale(c)
                o2 = o2 + q2.scale(c)
        assert p1.agree_through_degree(o1, 12)
        assert p2.agree_through_degree(o2, 12)


def test_coordinate_series_round_trip():
    # p1 + i p2 reassembles p: monomials (n, 0) carry exactly p[n]
    p = random_poly_series(random.Random(8), 10)
    p1, p2 = coordinate_series(p)
    for n in range(11):
        assert p1.coeff((n, 0)) == p.coeff(n)
        assert p2.coeff((n, 0)) == 0


# ----------------------------------------------------------------------
# Cauchy-Riemann


def test_cr_check_passes_for_coordinate_series():
    report = cr_check(*coordinate_series(SeriesU.monomial(2)), 10)
    assert report.passed


def test_cr_check_fails_for_conjugation():
    p1 = SeriesM.variable(2, 1)
    p2 = -SeriesM.variable(2, 2)
    report = cr_check(p1, p2, 5)
    assert not report.passed
    assert report.offense_degree == 1
    assert report.first_offense == (1, (0, 0))


def test_cr_check_identity_map():
    report = cr_check(SeriesM.variable(2, 1), SeriesM.variable(2, 2), 5)
    assert report.passed


def test_cr_check_random_series():
    rng = random.Random(101)
    for _ in range(20):
        p = random_poly_series(rng, 13)
        assert cr_check(*coordinate_series(p), 12).passed


def test_formal_derivative_coherence():
    # the complex derivative read along the real direction
    rng = random.Random(71)
    for _ in range(5):
        p = random_poly_series(rng, 13)
        p1, p2 = coordinate_series(p)
        d1, d2 = coordinate_series(p.derivative())
        assert d1.agree_through_degree(p1.partial(1), 12)
        assert d2.agree_through_degree(p2.partial(1), 12)


# ----------------------------------------------------------------------
# the disc and evaluation


def test_in_disc_examples():
    assert in_disc(ComplexPuiseux.from_real(T.scale(Fraction(1, 2))), 10)
    assert in_disc(ComplexPuiseux(T.scale(Fraction(1, 2)), T.scale(Fraction(1, 2))), 10)
    assert not in_disc(ComplexPuiseux.from_real(T), 10)  # boundary: open disc
    assert not in_disc(ComplexPuiseux(PuiseuxSeries.zero(), T), 10)
    assert not in_disc(ComplexPuiseux.from_real(PuiseuxSeries.from_rational(Fraction(1, 3))), 10)
    assert DiscPoint(ComplexPuiseux(T * T, -(T * T))).in_disc(10)


def test_eval_disc_at_zero():
    p = SeriesU.from_coeffs([Fraction(5, 2), 3, 1])
    v = eval_disc(p, ComplexPuiseux.zero(), 8)
    assert v.re.terms(8) == [(Fraction(0), Fraction(5, 2))]
    assert v.im.definitely_zero()


def test_eval_disc_square_at_ti():
    v = eval_disc(SeriesU.monomial(2), ComplexPuiseux(PuiseuxSeries.zero(), T), 8)
    assert v.re.terms(8) == [(Fraction(2), Fraction(-1))]
    assert v.im.terms(8) == []


def test_eval_disc_factorial_at_t():
    v = eval_disc(SeriesU.factorial_terms(), ComplexPuiseux.from_real(T), 5)
    assert v.re.terms(4) == [
        (Fraction(1), Fraction(1)),
        (Fraction(2), Fraction(1)),
        (Fraction(3), Fraction(2)),
        (Fraction(4), Fraction(6)),
    ]
    assert v.im.definitely_zero()


def test_eval_disc_rejects_outside():
    with pytest.raises(ValueError):
        eval_disc(SeriesU.geometric(), ComplexPuiseux.from_real(PuiseuxSeries.from_rational(Fraction(1, 2))), 5)
    with pytest.raises(ValueError):
        eval_disc(SeriesU.geometric(), ComplexPuiseux.from_real(T.scale(2)), 5)


def test_eval_disc_indeterminate_membership():
    lazily_t = T + PuiseuxSeries(1, 2, SeriesU(lambda n: Fraction(0)))
    with pytest.raises(IndeterminateMembership):
        eval_disc(SeriesU.geometric(), ComplexPuiseux.from_real(lazily_t), 5)


def test_eval_disc_agrees_with_coordinate_route():
    rng = random.Random(202)
    for _ in range(4):
        p = random_poly_series(rng, 7)
        x = random_inbox_coord(rng)
        y = random_inbox_coord(rng)
        v = eval_disc(p, ComplexPuiseux(x, y), 15)
        p1, p2 = coordinate_series(p)
        point = BoxPoint([x, y])
        assert equal_through(v.re, eval_box(p1, point, 15), 15)
        assert equal_through(v.im, eval_box(p2, point, 15), 15)


# ----------------------------------------------------------------------
# difference quotients


def test_diff_quotient_square_exact_algebra():
    # (z0+h)^2 - z0^2 = 2 z0 h + h^2, so delta = h exactly
    rep = diff_quotient_check(
        SeriesU.monomial(2),
        ComplexPuiseux.from_real(T),
        ComplexPuiseux.from_real(T * T),
        20,
    )
    assert rep.h_valuation == 2
    assert rep.delta_valuation == 2
    assert rep.satisfied


def test_diff_quotient_linear_map():
    rep = diff_quotient_check(
        SeriesU.monomial(1),
        ComplexPuiseux.from_real(T.scale(Fraction(1, 2))),
        ComplexPuiseux(T * T, T**3),
        20,
    )
    assert rep.delta_valuation is None  # defect vanishes through the horizon
    assert rep.satisfied


def test_diff_quotient_factorial():
    rep = diff_quotient_check(
        SeriesU.factorial_terms(),
        ComplexPuiseux.from_real(T.scale(Fraction(1, 2))),
        ComplexPuiseux.from_real(T**3),
        20,
    )
    assert rep.h_valuation == 3
    assert rep.satisfied
    assert rep.delta_valuation is None or rep.delta_valuation >= 3


def test_diff_quotient_rejects_zero_increment():
    with pytest.raises(ValueError):
        diff_quotient_check(
            SeriesU.monomial(2),
            ComplexPuiseux.from_real(T),
            ComplexPuiseux.zero(),
            10,
        )


def test_diff_quotient_random_gap():
    rng = random.Random(303)
    for _ in range(10):
        p = random_poly_series(rng, 8)
        z0 = ComplexPuiseux(random_inbox_coord(rng), random_inbox_coord(rng))
        v = rng.choice((1, 2, 3))
        h = ComplexPuiseux(
            PuiseuxSeries.monomial(Fraction(v), random_small_fraction(rng)),
            PuiseuxSeries.monomial(v + 1, random_small_fraction(rng)),
        )
        rep = diff_quotient_check(p, z0, h, 20)
        assert rep.h_valuation == v
        assert rep.satisfied
