"""Formal power series: ring operations, derivation, composition,
difference quotients and unit inversion, all checked exactly."""

import math
import random
from fractions import Fraction

import pytest

from puiseux import SeriesM, SeriesU, shift_quotient, univariate_section

from _support import random_poly_m, random_poly_series, random_stream_series


# ----------------------------------------------------------------------
# addition


def test_add_identity():
    p = SeriesU.from_coeffs([3, Fraction(1, 2), 0, 7])
    assert (p + SeriesU.zero()).agree_through(p, 20)


def test_add_inverse_is_zero():
    geom = SeriesU.geometric()
    s = geom + geom.scale(-1)
    assert all(s.coeff(n) == 0 for n in range(40))


def test_geom_plus_geom():
    # coefficientwise oracle: 1 + 1 at every index
    s = SeriesU.geometric() + SeriesU.geometric()
    assert [s.coeff(n) for n in range(30)] == [Fraction(2)] * 30


# ----------------------------------------------------------------------
# multiplication


def test_telescoping_identity():
    one_minus_z = SeriesU.from_coeffs([1, -1])
    s = one_minus_z * SeriesU.geometric()
    assert s.coeff(0) == 1
    assert all(s.coeff(n) == 0 for n in range(1, 50))


def test_exp_times_exp_binomial_oracle():
    e = SeriesU.exponential()
    s = e * e
    for n in range(30):
        # independent oracle: the binomial convolution, summed directly
        oracle = sum(
            Fraction(1, math.factorial(k)) * Fraction(1, math.factorial(n - k))
            for k in range(n + 1)
        )
        assert s.coeff(n) == oracle == Fraction(2**n, math.factorial(n))


def test_mul_annihilator():
    p = random_stream_series(random.Random(7))
    assert (p * SeriesU.zero()).is_structural_zero()
    assert (p * 0).is_structural_zero()


def test_ring_axioms_exact():
    rng = random.Random(2024)
    for _ in range(6):
        a = random_stream_series(rng)
        b = random_stream_series(rng)
        c = random_stream_series(rng)
        assert ((a + b) + c).agree_through(a + (b + c), 31)
        assert (a * (b + c)).agree_through(a * b + a * c, 31)
        assert (a * b).agree_through(b * a, 31)


# ----------------------------------------------------------------------
# derivation


def test_derive_geometric():
    d = SeriesU.geometric().derivative()
    assert [d.coeff(n) for n in range(10)] == [Fraction(n + 1) for n in range(10)]


def test_derive_factorial_terms():
    # term-by-term oracle on the series with coefficients (n-1)!
    d = SeriesU.factorial_terms().derivative()
    for m in range(12):
        assert d.coeff(m) == math.factorial(m + 1)


def test_partial_derivative_bivariate():
    xy = SeriesM.variable(2, 1) * SeriesM.variable(2, 2)
    d = xy.partial(1)
    assert d.coeff((0, 1)) == 1
    assert d.terms_through_degree(4) == {(0, 1): Fraction(1)}
    with pytest.raises(ValueError):
        xy.partial(3)


def test_leibniz_rule():
    rng = random.Random(11)
    for _ in range(5):
        a = random_stream_series(rng)
        b = random_stream_series(rng)
        lhs = (a * b).derivative()
        rhs = a.derivative() * b + a * b.derivative()
        assert lhs.agree_through(rhs, 31)


def test_arity_mismatch_rejected():
    a = SeriesM.one(2)
    b = SeriesM.one(3)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


# ----------------------------------------------------------------------
# composition


def test_compose_with_zero():
    p = SeriesU.from_coeffs([5, 1, 3])
    c = p.compose(SeriesU.zero())
    assert c.coeff(0) == 5
    assert all(c.coeff(n) == 0 for n in range(1, 10))


def test_compose_geom_with_z_squared():
    # substitution oracle: sum z^(2n)
    s = SeriesU.geometric().compose(SeriesU.monomial(2))
    for n in range(25):
        assert s.coeff(n) == (1 if n % 2 == 0 else 0)


def test_compose_identity_outer():
    q = random_poly_series(random.Random(3), 6) * SeriesU.monomial(1)
    s = SeriesU.monomial(1).compose(q)
    assert s.agree_through(q, 25)


def test_compose_rejects_nonzero_constant():
    with pytest.raises(ValueError):
        SeriesU.geometric().compose(SeriesU.one())


# ----------------------------------------------------------------------
# shift quotient (p(x+h) - p(x)) / h


def test_shift_quotient_square():
    q = shift_quotient(SeriesU.monomial(2))
    assert q.terms_through_degree(3) == {(1, 0): Fraction(2), (0, 1): Fraction(1)}


def test_shift_quotient_cube_binomial_oracle():
    q = shift_quotient(SeriesU.monomial(3))
    assert q.terms_through_degree(4) == {
        (2, 0): Fraction(3),
        (1, 1): Fraction(3),
        (0, 2): Fraction(1),
    }


def test_shift_quotient_polynomial_oracle():
    # independent route: expand p(x+h) - p(x) with SeriesM arithmetic and
    # divide by h via an explicit exponent shift
    rng = random.Random(5)
    p = random_poly_series(rng, 7)
    x = SeriesM.variable(2, 1)
    h = SeriesM.variable(2, 2)
    shifted = SeriesM.zero(2)
    plain = SeriesM.zero(2)
    x_plus_h_pow = SeriesM.one(2)
    x_pow = SeriesM.one(2)
    for k in range(8):
        c = p.coeff(k)
        shifted = shifted + x_plus_h_pow.scale(c)
        plain = plain + x_pow.scale(c)
        x_plus_h_pow = x_plus_h_pow * (x + h)
        x_pow = x_pow * x
    numerator = shifted - plain
    oracle = SeriesM(2, lambda a: numerator.coeff((a[0], a[1] + 1)), total_degree_bound=7)
    assert shift_quotient(p).agree_through_degree(oracle, 7)


def test_shift_quotient_at_h_zero_is_derivative():
    rng = random.Random(9)
    for _ in range(4):
        p = random_stream_series(rng)
        section = univariate_section(shift_quotient(p), keep=1)
        assert section.agree_through(p.derivative(), 25)


def test_finite_difference_consistency():
    # compose(shift_quotient(p), h -> c, x -> z) == (p(z+c) - p(z)) / c
    rng = random.Random(21)
    for _ in range(5):
        degree = 8
        p = random_poly_series(rng, degree)
        c = Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2, 5]))
        q = shift_quotient(p)
        # substitute the fixed rational c for h; support in h is finite
        lhs = SeriesU(
            lambda a: sum(q.coeff((a, b)) * c**b for b in range(degree)),
            support_bound=degree,
        )
        # oracle: evaluate p at z + c directly (finite polynomial sum)
        z_plus_c = SeriesU.from_coeffs([c, 1])
        shifted = SeriesU.zero()
        power = SeriesU.one()
        for k in range(degree + 1):
            shifted = shifted + power.scale(p.coeff(k))
            power = power * z_plus_c
        rhs = (shifted - p).scale(1 / c)
        assert lhs.agree_through(rhs, 21)


# ----------------------------------------------------------------------
# unit inversion


def test_invert_one_minus_z():
    inv = SeriesU.from_coeffs([1, -1]).invert_unit()
    assert inv.agree_through(SeriesU.geometric(), 30)


def test_invert_constant():
    inv = SeriesU.constant(2).invert_unit()
    assert inv.coeff(0) == Fraction(1, 2)
    assert all(inv.coeff(n) == 0 for n in range(1, 10))


def test_invert_exponential():
    inv = SeriesU.exponential().invert_unit()
    for n in range(20):
        assert inv.coeff(n) == Fraction((-1) ** n, math.factorial(n))
    # mul-check oracle
    prod = SeriesU.exponential() * inv
    assert prod.coeff(0) == 1
    assert all(prod.coeff(n) == 0 for n in range(1, 51))


def test_invert_random_units():
    rng = random.Random(13)
    for _ in range(5):
        p = random_stream_series(rng)
        if p.coeff(0) == 0:
            p = p + 1
        prod = p * p.invert_unit()
        assert prod.coeff(0) == 1
        assert all(prod.coeff(n) == 0 for n in range(1, 51))


def test_invert_rejects_non_unit():
    with pytest.raises(ZeroDivisionError):
        SeriesU.monomial(1).invert_unit()


# ----------------------------------------------------------------------
# bookkeeping


def test_memoization_is_deterministic():
    calls = []

    def fn(n):
        calls.append(n)
        return Fraction(n)

    s = SeriesU(fn)
    assert s.coeff(5) == 5
    assert s.coeff(5) == 5
    assert s.coeff(3) == 3
    assert calls == [0, 1, 2, 3, 4, 5]
    assert s.known_order == 6


def test_multivariate_random_ring_axioms():
    rng = random.Random(31)
    for _ in range(4):
        a = random_poly_m(rng, 2, 4)
        b = random_poly_m(rng, 2, 4)
        c = random_poly_m(rng, 2, 4)
        assert ((a + b) + c).agree_through_degree(a + (b + c), 8)
        assert (a * (b + c)).agree_through_degree(a * b + a * c, 8)
        assert (a * b).agree_through_degree(b * a, 8)
