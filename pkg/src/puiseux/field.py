"""The ordered field of Puiseux series over the rationals.

An element is t**(start/ram) * sum_k u_k * t**(k/ram) with u a lazy
coefficient stream; t is a positive infinitesimal, so the ordering is
decided by the sign of the leading coefficient and smaller exponents
dominate.  Equality of lazily presented elements is undecidable in
general, so every order-sensitive operation takes an explicit exponent
bound and reports what it could certify within that bound.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, Mapping

from .fps import SeriesU, Scalar, _as_fraction

_ZERO = Fraction(0)

#: Default number of grid indices scanned when hunting for a leading term.
DEFAULT_SCAN = 1024


class UndeterminedValuation(ArithmeticError):
    """Raised when no nonzero coefficient was found within the scan bound."""


class IndeterminateMembership(ValueError):
    """Raised when box or disc membership cannot be decided within the bound."""


def _dilate(u: SeriesU, d: int) -> SeriesU:
    if d == 1:
        return u
    bound = None if u.support_bound is None else (u.support_bound - 1) * d + 1
    return SeriesU(
        lambda n: u.coeff(n // d) if n % d == 0 else _ZERO,
        support_bound=bound,
    )


class PuiseuxSeries:
    """Element of the Puiseux field R = union over n of Q((t^(1/n)))."""

    __slots__ = ("ram", "start", "u", "_is_zero", "_lead")

    def __init__(self, ram: int, start: int, u: SeriesU, *, is_zero: bool = False):
        if ram < 1:
            raise ValueError("ramification must be a positive integer")
        self.ram = ram
        self.start = start
        self.u = u
        self._is_zero = is_zero
        self._lead: int | None = None  # cached stream index of the first nonzero coefficient

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls) -> "PuiseuxSeries":
        return cls(1, 0, SeriesU.zero(), is_zero=True)

    @classmethod
    def from_rational(cls, q: Scalar) -> "PuiseuxSeries":
        q = _as_fraction(q)
        if q == 0:
            return cls.zero()
        return cls(1, 0, SeriesU.constant(q))

    @classmethod
    def monomial(cls, exponent: Scalar, coefficient: Scalar = 1) -> "PuiseuxSeries":
        """coefficient * t**exponent."""
        c = _as_fraction(coefficient)
        if c == 0:
            return cls.zero()
        e = _as_fraction(exponent)
        return cls(e.denominator, e.numerator, SeriesU.constant(c))

    @classmethod
    def t(cls) -> "PuiseuxSeries":
        """The infinitesimal generator t."""
        return cls.monomial(1)

    @classmethod
    def from_terms(cls, terms: Mapping[Scalar, Scalar]) -> "PuiseuxSeries":
        """Finite sum of coefficient * t**exponent monomials."""
        cleaned = {_as_fraction(e): _as_fraction(c) for e, c in terms.items() if c != 0}
        if not cleaned:
            return cls.zero()
        ram = math.lcm(*(e.denominator for e in cleaned))
        grid = {int(e * ram): c for e, c in cleaned.items()}
        start = min(grid)
        length = max(grid) - start + 1
        dense = [grid.get(start + k, _ZERO) for k in range(length)]
        return cls(ram, start, SeriesU.from_coeffs(dense))

    @classmethod
    def from_series(cls, s: SeriesU) -> "PuiseuxSeries":
        """Substitute t for the series variable: the embedding of Q[[z]] into R."""
        if s.is_structural_zero():
            return cls.zero()
        return cls(1, 0, s)

    # ------------------------------------------------------------------
    # structure

    def grid_coeff(self, j: int) -> Fraction:
        """Coefficient of t**(j/self.ram)."""
        if self._is_zero:
            return _ZERO
        k = j - self.start
        if k < 0:
            return _ZERO
        return self.u.coeff(k)

    def coeff_at(self, exponent: Scalar) -> Fraction:
        """Coefficient of t**exponent; zero when off this element's grid."""
        e = _as_fraction(exponent)
        if self._is_zero:
            return _ZERO
        if self.ram % e.denominator != 0:
            return _ZERO
        return self.grid_coeff(int(e * self.ram))

    def raise_ram(self, m: int) -> "PuiseuxSeries":
        if m == self.ram:
            return self
        if m % self.ram != 0:
            raise ValueError("can only raise to a multiple of the current ramification")
        d = m // self.ram
        return PuiseuxSeries(m, self.start * d, _dilate(self.u, d), is_zero=self._is_zero)

    def definitely_zero(self) -> bool:
        if self._is_zero:
            return True
        return self.u.definitely_zero()

    def _find_lead(self, index_bound: int) -> int | None:
        """Stream index of the first nonzero coefficient, scanning at most
        index_bound entries; None when nothing was found."""
        if self._is_zero:
            return None
        if self._lead is not None:
            return self._lead
        limit = index_bound
        if self.u.support_bound is not None:
            limit = min(limit, self.u.support_bound)
        for k in range(limit):
            if self.u.coeff(k) != 0:
                self._lead = k
                return k
        return None

    def valuation(self, search_bound: int = DEFAULT_SCAN) -> Fraction | float:
        """Least exponent carrying a nonzero coefficient; +inf for zero.

        Scans at most ``search_bound`` grid indices; raises
        UndeterminedValuation when the element is not certified zero and
        no nonzero coefficient was found in range.
        """
        if self._is_zero:
            return math.inf
        k = self._find_lead(search_bound)
        if k is not None:
            return Fraction(self.start + k, self.ram)
        if self.u.support_bound is not None and self.u.support_bound <= search_bound:
            return math.inf
        raise UndeterminedValuation(
            f"no nonzero coefficient within {search_bound} grid steps; "
            "cannot locate a leading term"
        )

    def leading(self, search_bound: int = DEFAULT_SCAN) -> tuple[Fraction, Fraction]:
        """(exponent, coefficient) of the leading term; raises on zero."""
        v = self.valuation(search_bound)
        if v == math.inf:
            raise ZeroDivisionError("the zero element has no leading term")
        return v, self.u.coeff(self._lead)

    def normalize(self, search_bound: int = DEFAULT_SCAN) -> "PuiseuxSeries":
        """Re-anchor so the stream starts at the leading term.

        For finitely supported elements also reduces the ramification to
        its canonical value; for lazily infinite elements the ramification
        is kept (reduction cannot be certified from a finite prefix).
        """
        v = self.valuation(search_bound)
        if v == math.inf:
            return PuiseuxSeries.zero()
        if self.u.support_bound is not None:
            terms = {}
            for k in range(self.u.support_bound):
                c = self.u.coeff(k)
                if c:
                    terms[Fraction(self.start + k, self.ram)] = c
            return PuiseuxSeries.from_terms(terms)
        k0 = self._lead
        u = self.u
        return PuiseuxSeries(self.ram, self.start + k0, SeriesU(lambda n: u.coeff(n + k0)))

    def truncate(self, max_exponent: Scalar) -> "PuiseuxSeries":
        """Drop every term with exponent strictly above the bound."""
        if self._is_zero:
            return self
        limit = int(math.floor(_as_fraction(max_exponent) * self.ram)) - self.start + 1
        if limit <= 0:
            return PuiseuxSeries.zero()
        return PuiseuxSeries(self.ram, self.start, self.u.truncate(limit))

    def terms(self, max_exponent: Scalar) -> list[tuple[Fraction, Fraction]]:
        """Nonzero (exponent, coefficient) pairs with exponent <= the bound, ascending."""
        if self._is_zero:
            return []
        out = []
        limit = int(math.floor(_as_fraction(max_exponent) * self.ram))
        j = self.start
        while j <= limit:
            k = j - self.start
            if self.u.support_bound is not None and k >= self.u.support_bound:
                break
            c = self.u.coeff(k)
            if c:
                out.append((Fraction(j, self.ram), c))
            j += 1
        return out

    def __repr__(self):
        if self._is_zero:
            return "PuiseuxSeries(0)"
        return f"PuiseuxSeries(ram={self.ram}, start={self.start})"

    # ------------------------------------------------------------------
    # field operations

    @staticmethod
    def _coerce(value):
        if isinstance(value, PuiseuxSeries):
            return value
        if isinstance(value, (int, Fraction)):
            return PuiseuxSeries.from_rational(value)
        return None

    def __add__(self, other):
        other = PuiseuxSeries._coerce(other)
        if other is None:
            return NotImplemented
        if self._is_zero:
            return other
        if other._is_zero:
            return self
        m = math.lcm(self.ram, other.ram)
        a, b = self.raise_ram(m), other.raise_ram(m)
        start = min(a.start, b.start)
        bound = None
        if a.u.support_bound is not None and b.u.support_bound is not None:
            bound = max(a.start + a.u.support_bound, b.start + b.u.support_bound) - start
        return PuiseuxSeries(
            m,
            start,
            SeriesU(lambda n: a.grid_coeff(start + n) + b.grid_coeff(start + n), support_bound=bound),
        )

    __radd__ = __add__

    def __neg__(self):
        if self._is_zero:
            return self
        return PuiseuxSeries(self.ram, self.start, -self.u)

    def __sub__(self, other):
        other = PuiseuxSeries._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = PuiseuxSeries._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "PuiseuxSeries":
        c = _as_fraction(c)
        if c == 0 or self._is_zero:
            return PuiseuxSeries.zero()
        return PuiseuxSeries(self.ram, self.start, self.u.scale(c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self._is_zero or other._is_zero:
            return PuiseuxSeries.zero()
        m = math.lcm(self.ram, other.ram)
        a, b = self.raise_ram(m), other.raise_ram(m)
        return PuiseuxSeries(m, a.start + b.start, a.u * b.u)

    __rmul__ = __mul__

    def inv(self, search_bound: int = DEFAULT_SCAN) -> "PuiseuxSeries":
        """Multiplicative inverse: factor out the leading monomial and
        invert the remaining unit part."""
        if self._is_zero:
            raise ZeroDivisionError("division by zero in the Puiseux field")
        anchored = self.normalize(search_bound)
        if anchored._is_zero:
            raise ZeroDivisionError("division by zero in the Puiseux field")
        return PuiseuxSeries(anchored.ram, -anchored.start, anchored.u.invert_unit())

    def __truediv__(self, other):
        other = PuiseuxSeries._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = PuiseuxSeries._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = PuiseuxSeries.from_rational(1)
        for _ in range(exponent):
            result = result * self
        return result


# ----------------------------------------------------------------------
# order structure


def compare(a: PuiseuxSeries, b: PuiseuxSeries, order_bound: Scalar) -> int:
    """Sign of a - b decided by its leading coefficient.

    Returns -1 (less), 1 (greater), or 0 meaning no nonzero coefficient of
    a - b was found at any exponent <= order_bound: "equal through
    order_bound" in the caller's sense.
    """
    a = PuiseuxSeries._coerce(a)
    b = PuiseuxSeries._coerce(b)
    d = a - b
    if d._is_zero:
        return 0
    limit = int(math.floor(_as_fraction(order_bound) * d.ram))
    j = d.start
    while j <= limit:
        k = j - d.start
        if d.u.support_bound is not None and k >= d.u.support_bound:
            return 0
        c = d.u.coeff(k)
        if c:
            return 1 if c > 0 else -1
        j += 1
    return 0


def sign(a: PuiseuxSeries, order_bound: Scalar) -> int:
    return compare(a, PuiseuxSeries.zero(), order_bound)


def equal_through(a: PuiseuxSeries, b: PuiseuxSeries, order_bound: Scalar) -> bool:
    return compare(a, b, order_bound) == 0


def linear_combination(terms: Iterable[tuple[Scalar, PuiseuxSeries]]) -> PuiseuxSeries:
    """Exact sum of coefficient * element, evaluated as one flat stream."""
    items = [(_as_fraction(c), PuiseuxSeries._coerce(p)) for c, p in terms]
    items = [(c, p) for c, p in items if c != 0 and not p._is_zero]
    if not items:
        return PuiseuxSeries.zero()
    m = math.lcm(*(p.ram for _, p in items))
    raised = [(c, p.raise_ram(m)) for c, p in items]
    start = min(p.start for _, p in raised)
    bound = None
    if all(p.u.support_bound is not None for _, p in raised):
        bound = max(p.start + p.u.support_bound for _, p in raised) - start
    return PuiseuxSeries(
        m,
        start,
        SeriesU(
            lambda n: sum((c * p.grid_coeff(start + n) for c, p in raised), _ZERO),
            support_bound=bound,
        ),
    )


# ----------------------------------------------------------------------
# the infinitesimal box and evaluation of series on it


def _coord_in_closed_box(x: PuiseuxSeries, order_bound: Scalar) -> bool:
    """Decide |x| <= t by leading-term analysis.

    Certifiable within the bound: valuation above 1 (inside), valuation
    below 1 (outside), valuation 1 with |lead| != 1, and the boundary
    cases via the sign of the next nonzero coefficient.  Everything else
    raises IndeterminateMembership instead of guessing.
    """
    if x.definitely_zero():
        return True
    bound = _as_fraction(order_bound)
    index_bound = max(1, int(math.floor(bound * x.ram)) - x.start + 1)
    k = x._find_lead(index_bound)
    if k is None:
        if x.u.support_bound is not None and x.u.support_bound <= index_bound:
            return True  # certified zero
        if bound >= 1:
            return True  # every remaining exponent exceeds the bound >= 1
        raise IndeterminateMembership(
            f"no leading term found through exponent {bound}; membership undecided"
        )
    v = Fraction(x.start + k, x.ram)
    c = x.u.coeff(k)
    if v > 1:
        return True
    if v < 1:
        return False
    if abs(c) < 1:
        return True
    if abs(c) > 1:
        return False
    # |x| = t + tail: decided by the sign of the tail's leading coefficient.
    j = k + 1
    while j <= index_bound:
        if x.u.support_bound is not None and j >= x.u.support_bound:
            return True  # exactly +/- t: on the boundary of the closed box
        s = x.u.coeff(j)
        if s:
            return s < 0 if c > 0 else s > 0
        j += 1
    raise IndeterminateMembership(
        "coordinate agrees with +/- t through the scan bound; membership undecided"
    )


class BoxPoint:
    """Candidate point of the cube [-t, t]**n, with cached monomial powers."""

    __slots__ = ("coords", "_monomials")

    def __init__(self, coords: Iterable[PuiseuxSeries]):
        self.coords = tuple(PuiseuxSeries._coerce(c) for c in coords)
        if any(c is None for c in self.coords):
            raise TypeError("box coordinates must be Puiseux elements or rationals")
        self._monomials: dict[tuple[int, ...], PuiseuxSeries] = {}

    @property
    def arity(self) -> int:
        return len(self.coords)

    def in_box(self, order_bound: Scalar) -> bool:
        """True when every coordinate satisfies |x_i| <= t; may raise
        IndeterminateMembership."""
        return all(_coord_in_closed_box(c, order_bound) for c in self.coords)

    def monomial_value(self, alpha: tuple[int, ...]) -> PuiseuxSeries:
        alpha = tuple(alpha)
        cached = self._monomials.get(alpha)
        if cached is not None:
            return cached
        if all(a == 0 for a in alpha):
            value = PuiseuxSeries.from_rational(1)
        else:
            i = next(i for i, a in enumerate(alpha) if a > 0)
            lower = tuple(a - 1 if j == i else a for j, a in enumerate(alpha))
            value = self.monomial_value(lower) * self.coords[i]
        self._monomials[alpha] = value
        return value


def eval_box(p, x: BoxPoint, order: Scalar) -> PuiseuxSeries:
    """Value of the box function of p at x, exact through exponent ``order``.

    In-box coordinates have valuation >= 1, so only monomials of total
    degree <= order contribute below the bound; the result is truncated at
    the bound.  Out-of-box points evaluate to zero by definition.
    """
    from .fps import SeriesM, degree_monomials

    if isinstance(x, (list, tuple)):
        x = BoxPoint(x)
    if isinstance(p, SeriesU):
        p = SeriesM(1, lambda a, s=p: s.coeff(a[0]), total_degree_bound=p.support_bound)
    if p.arity != x.arity:
        raise ValueError("series arity does not match the point dimension")
    if not x.in_box(order):
        return PuiseuxSeries.zero()
    order_f = _as_fraction(order)
    terms = []
    top = int(order_f)
    if p.total_degree_bound is not None:
        top = min(top, p.total_degree_bound - 1)
    for d in range(top + 1):
        for alpha in degree_monomials(x.arity, d):
            c = p.coeff(alpha)
            if c:
                terms.append((c, x.monomial_value(alpha)))
    return linear_combination(terms).truncate(order_f)
