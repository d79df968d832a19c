"""Lazy exact formal power series over the rationals.

Every coefficient is a ``fractions.Fraction``; nothing is ever rounded or
truncated behind the caller's back.  A series is a rule for producing
coefficients plus a memo of everything computed so far.  Series are
immutable mathematical values, so handles can be shared freely, including
across threads: memo fills are serialized per series and recomputation
would be idempotent anyway.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from itertools import product as _cartesian
from typing import Callable, Iterable, Mapping

_ZERO = Fraction(0)
_ONE = Fraction(1)

Scalar = int | Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class SeriesU:
    """Univariate formal power series with lazily memoized coefficients.

    ``fn(n)`` may consult coefficients of the series under construction at
    indices strictly below ``n``; coefficients are filled in ascending
    order, so such self references hit the memo instead of recursing.

    ``support_bound``, when set, certifies that ``coeff(k) == 0`` for every
    ``k >= support_bound`` (the series is a polynomial of degree below the
    bound).
    """

    __slots__ = ("_fn", "_memo", "_lock", "support_bound")

    def __init__(self, fn: Callable[[int], Fraction], support_bound: int | None = None):
        self._fn = fn
        self._memo: list[Fraction] = []
        self._lock = threading.RLock()
        self.support_bound = support_bound

    # ------------------------------------------------------------------
    # coefficient access

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            raise IndexError("coefficient index must be nonnegative")
        memo = self._memo
        if n < len(memo):
            return memo[n]
        if self.support_bound is not None and n >= self.support_bound:
            return _ZERO
        with self._lock:
            for k in range(len(memo), n + 1):
                memo.append(_as_fraction(self._fn(k)))
        return memo[n]

    def coeffs(self, count: int) -> list[Fraction]:
        """First ``count`` coefficients, indices 0 .. count-1."""
        return [self.coeff(k) for k in range(count)]

    @property
    def known_order(self) -> int:
        """Index bound below which coefficients are already computed."""
        return len(self._memo)

    def is_structural_zero(self) -> bool:
        return self.support_bound == 0

    def definitely_zero(self) -> bool:
        """True only when the series is certified zero (finite support, all zero)."""
        if self.support_bound is None:
            return False
        return all(self.coeff(k) == 0 for k in range(self.support_bound))

    def agree_through(self, other: "SeriesU", order: int) -> bool:
        """Exact coefficientwise agreement for indices 0 .. order-1."""
        return all(self.coeff(k) == other.coeff(k) for k in range(order))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs(min(6, self.known_order) or 4))
        return f"SeriesU({shown}, ...)"

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_coeffs(cls, values: Iterable[Scalar]) -> "SeriesU":
        vals = [_as_fraction(v) for v in values]
        while vals and vals[-1] == 0:
            vals.pop()
        return cls(lambda n: vals[n], support_bound=len(vals))

    @classmethod
    def zero(cls) -> "SeriesU":
        return _SERIES_ZERO

    @classmethod
    def one(cls) -> "SeriesU":
        return cls.from_coeffs([1])

    @classmethod
    def constant(cls, c: Scalar) -> "SeriesU":
        return cls.from_coeffs([c])

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> "SeriesU":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        c = _as_fraction(coefficient)
        return cls.from_coeffs([0] * degree + [c])

    @classmethod
    def geometric(cls) -> "SeriesU":
        """1 + z + z^2 + ..."""
        return cls(lambda n: _ONE)

    @classmethod
    def exponential(cls) -> "SeriesU":
        """sum z^n / n!"""
        return cls(lambda n: Fraction(1, math.factorial(n)))

    @classmethod
    def factorial_terms(cls) -> "SeriesU":
        """z + z^2 + 2 z^3 + 6 z^4 + ...: coefficient of z^n is (n-1)! for n >= 1."""
        return cls(lambda n: _ZERO if n == 0 else Fraction(math.factorial(n - 1)))

    # ------------------------------------------------------------------
    # ring operations

    @staticmethod
    def _coerce(value):
        if isinstance(value, SeriesU):
            return value
        if isinstance(value, (int, Fraction)):
            return SeriesU.constant(value)
        return None

    def __add__(self, other):
        other = SeriesU._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_structural_zero():
            return self
        if self.is_structural_zero():
            return other
        a, b = self, other
        bound = None
        if a.support_bound is not None and b.support_bound is not None:
            bound = max(a.support_bound, b.support_bound)
        return SeriesU(lambda n: a.coeff(n) + b.coeff(n), support_bound=bound)

    __radd__ = __add__

    def __neg__(self):
        a = self
        return SeriesU(lambda n: -a.coeff(n), support_bound=a.support_bound)

    def __sub__(self, other):
        other = SeriesU._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = SeriesU._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "SeriesU":
        c = _as_fraction(c)
        if c == 0:
            return SeriesU.zero()
        if c == 1:
            return self
        a = self
        return SeriesU(lambda n: c * a.coeff(n), support_bound=a.support_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SeriesU):
            return NotImplemented
        if self.is_structural_zero() or other.is_structural_zero():
            return SeriesU.zero()
        a, b = self, other
        bound = None
        if a.support_bound is not None and b.support_bound is not None:
            bound = a.support_bound + b.support_bound - 1
        return SeriesU(
            lambda n: sum((a.coeff(k) * b.coeff(n - k) for k in range(n + 1)), _ZERO),
            support_bound=bound,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(1 / other)
        if not isinstance(other, SeriesU):
            return NotImplemented
        return self * other.invert_unit()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert_unit() ** (-exponent)
        result = SeriesU.one()
        for _ in range(exponent):
            result = result * self
        return result

    # ------------------------------------------------------------------
    # calculus and composition

    def derivative(self) -> "SeriesU":
        a = self
        bound = None if a.support_bound is None else max(0, a.support_bound - 1)
        return SeriesU(lambda n: (n + 1) * a.coeff(n + 1), support_bound=bound)

    def compose(self, inner: "SeriesU") -> "SeriesU":
        """Substitution self(inner); requires inner to have zero constant term."""
        if inner.coeff(0) != 0:
            raise ValueError("composition requires an inner series with zero constant term")
        outer = self
        powers = [SeriesU.one()]

        def fn(n):
            # inner has positive valuation, so inner**k contributes nothing
            # below index k; the sum over k is finite.
            while len(powers) <= n:
                powers.append(powers[-1] * inner)
            return sum((outer.coeff(k) * powers[k].coeff(n) for k in range(n + 1)), _ZERO)

        return SeriesU(fn)

    def invert_unit(self) -> "SeriesU":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.coeff(0)
        if c0 == 0:
            raise ZeroDivisionError("series has zero constant term and is not a unit")
        a = self
        inv0 = 1 / c0

        def fn(n):
            if n == 0:
                return inv0
            acc = _ZERO
            for k in range(1, n + 1):
                ak = a.coeff(k)
                if ak:
                    acc += ak * result.coeff(n - k)
            return -inv0 * acc

        result = SeriesU(fn)
        return result

    def truncate(self, order: int) -> "SeriesU":
        """Zero out all coefficients at index >= order."""
        a = self
        bound = order if a.support_bound is None else min(order, a.support_bound)
        return SeriesU(lambda n: a.coeff(n), support_bound=max(0, bound))


_SERIES_ZERO = SeriesU(lambda n: _ZERO, support_bound=0)


# ----------------------------------------------------------------------
# multivariate series


def degree_monomials(arity: int, degree: int):
    """Yield all exponent tuples of the given arity and total degree."""
    if arity == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in degree_monomials(arity - 1, degree - first):
            yield (first,) + rest


class SeriesM:
    """Multivariate formal power series: exponent tuple -> Fraction, memoized.

    Each total-degree slice has finitely many monomials, so any operation
    below a degree bound touches finitely many coefficients.
    ``total_degree_bound`` certifies zero coefficients at total degree >=
    the bound.
    """

    __slots__ = ("arity", "_fn", "_memo", "_lock", "total_degree_bound")

    def __init__(self, arity: int, fn, total_degree_bound: int | None = None):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.arity = arity
        self._fn = fn
        self._memo: dict[tuple[int, ...], Fraction] = {}
        self._lock = threading.RLock()
        self.total_degree_bound = total_degree_bound

    def _check_index(self, alpha) -> tuple[int, ...]:
        alpha = tuple(alpha)
        if len(alpha) != self.arity:
            raise ValueError(f"exponent tuple of length {len(alpha)} for arity {self.arity}")
        if any(a < 0 for a in alpha):
            raise IndexError("exponents must be nonnegative")
        return alpha

    def coeff(self, alpha) -> Fraction:
        alpha = self._check_index(alpha)
        memo = self._memo
        try:
            return memo[alpha]
        except KeyError:
            pass
        if self.total_degree_bound is not None and sum(alpha) >= self.total_degree_bound:
            return _ZERO
        with self._lock:
            if alpha not in memo:
                memo[alpha] = _as_fraction(self._fn(alpha))
        return memo[alpha]

    def degree_slice(self, degree: int) -> dict[tuple[int, ...], Fraction]:
        """Nonzero coefficients of the given total degree."""
        out = {}
        for alpha in degree_monomials(self.arity, degree):
            c = self.coeff(alpha)
            if c:
                out[alpha] = c
        return out

    def terms_through_degree(self, degree: int) -> dict[tuple[int, ...], Fraction]:
        out = {}
        for d in range(degree + 1):
            out.update(self.degree_slice(d))
        return out

    def agree_through_degree(self, other: "SeriesM", degree: int) -> bool:
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        for d in range(degree + 1):
            for alpha in degree_monomials(self.arity, d):
                if self.coeff(alpha) != other.coeff(alpha):
                    return False
        return True

    def __repr__(self):
        return f"SeriesM(arity={self.arity})"

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, arity: int) -> "SeriesM":
        return cls(arity, lambda a: _ZERO, total_degree_bound=0)

    @classmethod
    def constant(cls, arity: int, c: Scalar) -> "SeriesM":
        c = _as_fraction(c)
        if c == 0:
            return cls.zero(arity)
        zero_index = (0,) * arity
        return cls(arity, lambda a: c if a == zero_index else _ZERO, total_degree_bound=1)

    @classmethod
    def one(cls, arity: int) -> "SeriesM":
        return cls.constant(arity, 1)

    @classmethod
    def variable(cls, arity: int, i: int) -> "SeriesM":
        """The i-th variable as a series; variables are numbered from 1."""
        if not 1 <= i <= arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        index = tuple(1 if k == i - 1 else 0 for k in range(arity))
        return cls(arity, lambda a: _ONE if a == index else _ZERO, total_degree_bound=2)

    @classmethod
    def from_terms(cls, arity: int, terms: Mapping[tuple[int, ...], Scalar]) -> "SeriesM":
        table = {tuple(k): _as_fraction(v) for k, v in terms.items() if v != 0}
        if not table:
            return cls.zero(arity)
        bound = max(sum(k) for k in table) + 1
        return cls(arity, lambda a: table.get(a, _ZERO), total_degree_bound=bound)

    # ------------------------------------------------------------------
    # ring operations

    def _coerced(self, other):
        if isinstance(other, SeriesM):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesM.constant(self.arity, other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        bound = None
        if a.total_degree_bound is not None and b.total_degree_bound is not None:
            bound = max(a.total_degree_bound, b.total_degree_bound)
        return SeriesM(self.arity, lambda al: a.coeff(al) + b.coeff(al), total_degree_bound=bound)

    __radd__ = __add__

    def __neg__(self):
        a = self
        return SeriesM(self.arity, lambda al: -a.coeff(al), total_degree_bound=a.total_degree_bound)

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "SeriesM":
        c = _as_fraction(c)
        if c == 0:
            return SeriesM.zero(self.arity)
        if c == 1:
            return self
        a = self
        return SeriesM(self.arity, lambda al: c * a.coeff(al), total_degree_bound=a.total_degree_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        bound = None
        if a.total_degree_bound is not None and b.total_degree_bound is not None:
            bound = max(0, a.total_degree_bound + b.total_degree_bound - 1)

        def fn(alpha):
            acc = _ZERO
            for beta in _cartesian(*(range(ai + 1) for ai in alpha)):
                ca = a.coeff(beta)
                if ca:
                    gamma = tuple(ai - bi for ai, bi in zip(alpha, beta))
                    acc += ca * b.coeff(gamma)
            return acc

        return SeriesM(self.arity, fn, total_degree_bound=bound)

    __rmul__ = __mul__

    def partial(self, i: int) -> "SeriesM":
        """Formal partial derivative; variables are numbered from 1."""
        if not 1 <= i <= self.arity:
            raise ValueError(f"variable index {i} out of range for arity {self.arity}")
        a = self
        j = i - 1
        bound = None if a.total_degree_bound is None else max(0, a.total_degree_bound - 1)

        def fn(alpha):
            shifted = tuple(v + 1 if k == j else v for k, v in enumerate(alpha))
            return (alpha[j] + 1) * a.coeff(shifted)

        return SeriesM(self.arity, fn, total_degree_bound=bound)


def shift_quotient(p: SeriesU) -> SeriesM:
    """The bivariate series q(x, h) = (p(x + h) - p(x)) / h.

    The division by h is an index shift, never a series division: the
    coefficient of x**a h**b is C(a+b+1, b+1) * p[a+b+1].  Setting h = 0
    recovers the formal derivative of p.
    """
    bound = None if p.support_bound is None else max(0, p.support_bound - 1)
    return SeriesM(
        2,
        lambda a: math.comb(a[0] + a[1] + 1, a[1] + 1) * p.coeff(a[0] + a[1] + 1),
        total_degree_bound=bound,
    )


def univariate_section(m: SeriesM, keep: int = 1) -> SeriesU:
    """Set every variable except ``keep`` (1-based) to zero in an arity-2 series."""
    if m.arity != 2:
        raise ValueError("univariate_section expects an arity-2 series")
    if keep not in (1, 2):
        raise ValueError("keep must be 1 or 2")
    bound = m.total_degree_bound
    if keep == 1:
        return SeriesU(lambda n: m.coeff((n, 0)), support_bound=bound)
    return SeriesU(lambda n: m.coeff((0, n)), support_bound=bound)
