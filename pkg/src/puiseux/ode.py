"""First-order linear ODEs with power-series coefficients.

A(z) F'(z) + B(z) F(z) = C(z) is solved by matching the coefficient of
z**n, which yields a linear recurrence for the solution coefficients.
Two regimes are supported: A(0) = 0 with B(0) != 0 pins every coefficient
with no freedom (unique regime), and A(0) != 0 leaves exactly the
constant term free (initial-value regime).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fps import SeriesU, Scalar, _as_fraction

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LinearODE:
    """A*F' + B*F = C with formal power series coefficients."""

    a: SeriesU
    b: SeriesU
    c: SeriesU

    @classmethod
    def factorial_ode(cls) -> "LinearODE":
        """F = z**2 F' + z, rearranged; its unique formal solution has
        coefficient (n-1)! at z**n."""
        return cls(
            a=SeriesU.monomial(2),
            b=SeriesU.constant(-1),
            c=SeriesU.monomial(1, -1),
        )


@dataclass(frozen=True)
class FormalSolution:
    series: SeriesU
    regime: str  # "unique" or "ivp"


def solve(ode: LinearODE, initial: Scalar | None = None) -> FormalSolution:
    """Formal power-series solution, produced coefficient by coefficient.

    Unique regime (A(0) = 0, B(0) != 0): no initial value may be supplied;
    matching z**n gives (B_0 + n*A_1) a_n = C_n - (lower-index terms),
    since the k = 1 term of the A-sum also carries a_n.  IVP regime
    (A(0) != 0): the constant term is the supplied initial value and
    A(0)*n is the pivot for a_n.
    """
    a0 = ode.a.coeff(0)
    b0 = ode.b.coeff(0)
    if a0 == 0 and b0 == 0:
        raise ValueError(
            "singular equation: A(0) = B(0) = 0 leaves no pivot for the recurrence"
        )

    if a0 == 0:
        if initial is not None:
            raise ValueError("the unique regime admits no initial value")
        a1 = ode.a.coeff(1)

        def fn(n):
            pivot = b0 + n * a1
            if pivot == 0:
                raise ValueError(
                    f"resonant index {n}: the recurrence pivot B(0) + n*A'(0) vanishes"
                )
            acc = _ZERO
            for k in range(2, n + 1):
                ak = ode.a.coeff(k)
                if ak:
                    acc += ak * (n - k + 1) * f.coeff(n - k + 1)
            for k in range(1, n + 1):
                bk = ode.b.coeff(k)
                if bk:
                    acc += bk * f.coeff(n - k)
            return (ode.c.coeff(n) - acc) / pivot

        f = SeriesU(fn)
        return FormalSolution(f, "unique")

    if initial is None:
        raise ValueError("A(0) != 0: an initial value F(0) is required")
    init = _as_fraction(initial)

    def fn(n):
        if n == 0:
            return init
        # match the coefficient of z**(n-1); the pivot A_0 * n sits on a_n
        m = n - 1
        acc = _ZERO
        for k in range(1, m + 1):
            ak = ode.a.coeff(k)
            if ak:
                acc += ak * (m - k + 1) * f.coeff(m - k + 1)
        for k in range(0, m + 1):
            bk = ode.b.coeff(k)
            if bk:
                acc += bk * f.coeff(m - k)
        return (ode.c.coeff(m) - acc) / (a0 * n)

    f = SeriesU(fn)
    return FormalSolution(f, "ivp")


def residual(ode: LinearODE, f: SeriesU, order: int) -> list[Fraction]:
    """First ``order`` coefficients of A*F' + B*F - C, computed exactly."""
    r = ode.a * f.derivative() + ode.b * f - ode.c
    return r.coeffs(order)


def first_nonzero(values) -> int | None:
    for i, v in enumerate(values):
        if v != 0:
            return i
    return None


def taylor_uniqueness_witness(
    ode: LinearODE, f: SeriesU, g: SeriesU, order: int
) -> int | None:
    """Confirm two zero-residual solutions agree coefficientwise.

    Returns None when f and g agree through ``order`` (the unique-regime
    solution is pinned by its recurrence), else the first disagreeing
    index.  Inputs with a nonzero residual through ``order`` are rejected.
    """
    if ode.a.coeff(0) != 0 or ode.b.coeff(0) == 0:
        raise ValueError("uniqueness holds only in the unique regime")
    for name, s in (("F", f), ("G", g)):
        bad = first_nonzero(residual(ode, s, order))
        if bad is not None:
            raise ValueError(f"{name} is not a solution: residual nonzero at index {bad}")
    for n in range(order + 1):
        if f.coeff(n) != g.coeff(n):
            return n
    return None
