"""The complexified Puiseux field K and power series on the infinitesimal disc.

K is represented as pairs over the real Puiseux field.  A univariate
series with rational coefficients induces a function on the open disc of
radius t; its two coordinate functions are bivariate series recovered from
the homogeneous decomposition of (x + iy)**n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .fps import SeriesU, SeriesM, Scalar, _as_fraction, degree_monomials
from .field import (
    PuiseuxSeries,
    IndeterminateMembership,
    compare,
    linear_combination,
)

_ZERO = Fraction(0)


class ComplexPuiseux:
    """Element of K = R(sqrt(-1)), stored as a real and imaginary part."""

    __slots__ = ("re", "im")

    def __init__(self, re: PuiseuxSeries, im: PuiseuxSeries):
        self.re = re
        self.im = im

    @classmethod
    def zero(cls) -> "ComplexPuiseux":
        return cls(PuiseuxSeries.zero(), PuiseuxSeries.zero())

    @classmethod
    def one(cls) -> "ComplexPuiseux":
        return cls(PuiseuxSeries.from_rational(1), PuiseuxSeries.zero())

    @classmethod
    def i(cls) -> "ComplexPuiseux":
        return cls(PuiseuxSeries.zero(), PuiseuxSeries.from_rational(1))

    @classmethod
    def from_real(cls, re) -> "ComplexPuiseux":
        re = PuiseuxSeries._coerce(re)
        return cls(re, PuiseuxSeries.zero())

    @staticmethod
    def _coerce(value):
        if isinstance(value, ComplexPuiseux):
            return value
        real = PuiseuxSeries._coerce(value)
        if real is None:
            return None
        return ComplexPuiseux(real, PuiseuxSeries.zero())

    def definitely_zero(self) -> bool:
        return self.re.definitely_zero() and self.im.definitely_zero()

    def conjugate(self) -> "ComplexPuiseux":
        return ComplexPuiseux(self.re, -self.im)

    def norm_sq(self) -> PuiseuxSeries:
        """re**2 + im**2; over an ordered field the squares cannot cancel."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        other = ComplexPuiseux._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexPuiseux(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPuiseux(-self.re, -self.im)

    def __sub__(self, other):
        other = ComplexPuiseux._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = ComplexPuiseux._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexPuiseux(self.re.scale(other), self.im.scale(other))
        other = ComplexPuiseux._coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexPuiseux(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inv(self, search_bound: int = 1024) -> "ComplexPuiseux":
        n = self.norm_sq()
        n_inv = n.inv(search_bound)
        return ComplexPuiseux(self.re * n_inv, (-self.im) * n_inv)

    def __truediv__(self, other):
        other = ComplexPuiseux._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def truncate(self, max_exponent: Scalar) -> "ComplexPuiseux":
        return ComplexPuiseux(self.re.truncate(max_exponent), self.im.truncate(max_exponent))

    def __repr__(self):
        return f"ComplexPuiseux(re={self.re!r}, im={self.im!r})"


# ----------------------------------------------------------------------
# homogeneous decomposition and coordinate series


def homog_decompose(n: int) -> tuple[SeriesM, SeriesM]:
    """Homogeneous integer polynomials q1, q2 of degree n with
    (x + iy)**n = q1(x, y) + i*q2(x, y)."""
    if n < 1:
        raise ValueError("degree must be a positive integer")
    q1: dict[tuple[int, int], Fraction] = {}
    q2: dict[tuple[int, int], Fraction] = {}
    for k in range(n + 1):
        c = Fraction(math.comb(n, k))
        if k % 2 == 0:
            q1[(n - k, k)] = c if k % 4 == 0 else -c
        else:
            q2[(n - k, k)] = c if k % 4 == 1 else -c
    return SeriesM.from_terms(2, q1), SeriesM.from_terms(2, q2)


def coordinate_series(p: SeriesU) -> tuple[SeriesM, SeriesM]:
    """The two coordinate series p1, p2 with p(x + iy) = p1 + i*p2.

    Coefficients come straight from the binomial expansion: the monomial
    x**a y**b of degree n = a + b picks up p[n] * C(n, b) * i**b, split by
    the parity of b into the real and imaginary parts.
    """
    bound = p.support_bound

    def re_fn(alpha):
        a, b = alpha
        if b % 2 != 0:
            return _ZERO
        c = p.coeff(a + b)
        if not c:
            return _ZERO
        c = c * math.comb(a + b, b)
        return c if b % 4 == 0 else -c

    def im_fn(alpha):
        a, b = alpha
        if b % 2 != 1:
            return _ZERO
        c = p.coeff(a + b)
        if not c:
            return _ZERO
        c = c * math.comb(a + b, b)
        return c if b % 4 == 1 else -c

    return (
        SeriesM(2, re_fn, total_degree_bound=bound),
        SeriesM(2, im_fn, total_degree_bound=bound),
    )


# ----------------------------------------------------------------------
# Cauchy-Riemann verification


@dataclass(frozen=True)
class CauchyRiemannReport:
    """Outcome of a Cauchy-Riemann check through a total degree."""

    passed: bool
    degree: int
    #: (identity, monomial) of the first mismatch in the derivative
    #: series; identity 1 is d(p1)/dx = d(p2)/dy, identity 2 is
    #: d(p1)/dy = -d(p2)/dx.  None when the check passed.
    first_offense: tuple[int, tuple[int, int]] | None = None

    @property
    def offense_degree(self) -> int | None:
        """Total degree of the offending monomial in the original series."""
        if self.first_offense is None:
            return None
        return sum(self.first_offense[1]) + 1


def cr_check(p1: SeriesM, p2: SeriesM, degree: int) -> CauchyRiemannReport:
    """Verify the Cauchy-Riemann identities exactly through total degree
    ``degree`` of the original pair."""
    if p1.arity != 2 or p2.arity != 2:
        raise ValueError("cr_check expects arity-2 series")
    d1x, d1y = p1.partial(1), p1.partial(2)
    d2x, d2y = p2.partial(1), p2.partial(2)
    for d in range(max(0, degree)):
        for alpha in degree_monomials(2, d):
            if d1x.coeff(alpha) != d2y.coeff(alpha):
                return CauchyRiemannReport(False, degree, (1, alpha))
            if d1y.coeff(alpha) != -d2x.coeff(alpha):
                return CauchyRiemannReport(False, degree, (2, alpha))
    return CauchyRiemannReport(True, degree)


# ----------------------------------------------------------------------
# the infinitesimal disc


def in_disc(z: ComplexPuiseux, order_bound: Scalar) -> bool:
    """Strict Euclidean criterion re**2 + im**2 < t**2, decided by leading
    terms; raises IndeterminateMembership when undecidable in the bound."""
    t_sq = PuiseuxSeries.monomial(2)
    diff = z.norm_sq() - t_sq
    c = compare(diff, PuiseuxSeries.zero(), order_bound)
    if c < 0:
        return True
    if c > 0:
        return False
    if diff.definitely_zero():
        return False  # exactly on the boundary circle: not in the open disc
    raise IndeterminateMembership(
        f"norm agrees with t**2 through exponent {order_bound}; membership undecided"
    )


class DiscPoint:
    """Candidate point of the open disc of radius t around 0 in K."""

    __slots__ = ("z",)

    def __init__(self, z: ComplexPuiseux):
        self.z = z

    def in_disc(self, order_bound: Scalar) -> bool:
        return in_disc(self.z, order_bound)


def _coord_val_ge_1(x: PuiseuxSeries, order_bound: Scalar) -> bool:
    if x.definitely_zero():
        return True
    index_bound = max(1, int(_as_fraction(order_bound)) * x.ram - x.start + 1)
    k = x._find_lead(index_bound)
    if k is None:
        # every remaining exponent exceeds the scanned bound
        return _as_fraction(order_bound) >= 1
    return Fraction(x.start + k, x.ram) >= 1


def _partial_sum(p: SeriesU, z: ComplexPuiseux, order: int) -> ComplexPuiseux:
    """sum of p[n] * z**n for n <= order, truncated at exponent ``order``.

    Both coordinates of z must have valuation >= 1, so z**n contributes
    nothing below exponent n and the partial sum is exact through the
    bound.
    """
    for coord in (z.re, z.im):
        if not _coord_val_ge_1(coord, order):
            raise ValueError("coordinates must have valuation >= 1 for a convergent sum")
    re_terms: list[tuple[Fraction, PuiseuxSeries]] = []
    im_terms: list[tuple[Fraction, PuiseuxSeries]] = []
    power = ComplexPuiseux.one()
    top = order
    if p.support_bound is not None:
        top = min(top, p.support_bound - 1)
    for n in range(top + 1):
        c = p.coeff(n)
        if c:
            re_terms.append((c, power.re))
            im_terms.append((c, power.im))
        if n < top:
            power = power * z
    return ComplexPuiseux(
        linear_combination(re_terms).truncate(order),
        linear_combination(im_terms).truncate(order),
    )


def eval_disc(p: SeriesU, z, order: int) -> ComplexPuiseux:
    """Partial sum of p at a point, exact through t-exponent ``order`` in
    both coordinates.

    The domain enforced is the closed coordinate box |re|, |im| <= t,
    which is exactly where the coordinate route through eval_box evaluates
    the same sum; points certifiably outside are rejected, undecidable
    membership raises IndeterminateMembership.
    """
    from .field import _coord_in_closed_box

    if isinstance(z, DiscPoint):
        z = z.z
    z = ComplexPuiseux._coerce(z)
    bound = max(2, order)
    for coord in (z.re, z.im):
        if not _coord_in_closed_box(coord, bound):
            raise ValueError("point is outside the closed box of radius t")
    return _partial_sum(p, z, order)


@dataclass(frozen=True)
class DifferenceQuotientReport:
    """Valuation gap of (F(z0+h) - F(z0))/h - F'(z0), scanned exactly."""

    h_valuation: Fraction
    #: valuation of the defect, or None when no nonzero coefficient was
    #: found through ``scanned_through`` (defect 0 as far as certified).
    delta_valuation: Fraction | None
    scanned_through: Fraction
    satisfied: bool


def diff_quotient_check(p: SeriesU, z0, h: ComplexPuiseux, order: int) -> DifferenceQuotientReport:
    """Check the difference-quotient form of the derivative identity.

    The contract is valuation(delta) >= valuation(h).  The three values of
    the sum are taken as pure partial sums, which converge t-adically at
    any point whose coordinates have valuation >= 1; that is the
    precondition enforced on z0 and z0 + h.  Evaluations are exact through
    ``order``; dividing by h costs valuation(h) of that horizon, so the
    defect is scanned through order - valuation(h).
    """
    if isinstance(z0, DiscPoint):
        z0 = z0.z
    z0 = ComplexPuiseux._coerce(z0)
    h = ComplexPuiseux._coerce(h)
    if h is None or h.definitely_zero():
        raise ValueError("the increment h must be a nonzero element of K")
    h_val = min(
        (c.valuation() for c in (h.re, h.im) if not c.definitely_zero()),
    )
    if h_val < 1:
        raise ValueError("the increment h must have valuation >= 1")

    horizon = Fraction(order) - h_val
    quotient = (_partial_sum(p, z0 + h, order) - _partial_sum(p, z0, order)) * h.inv()
    delta = (quotient - _partial_sum(p.derivative(), z0, order)).truncate(horizon)

    delta_val: Fraction | None = None
    for coord in (delta.re, delta.im):
        terms = coord.terms(horizon)
        if terms:
            v = terms[0][0]
            if delta_val is None or v < delta_val:
                delta_val = v
    satisfied = delta_val is None or delta_val >= h_val
    return DifferenceQuotientReport(h_val, delta_val, horizon, satisfied)
