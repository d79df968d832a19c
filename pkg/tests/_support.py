"""Shared generators and oracles for the test suite.

Everything randomized is driven by an explicit random.Random seed so runs
are reproducible bit for bit.
"""

from __future__ import annotations

import random
from fractions import Fraction

from puiseux import BoxPoint, PuiseuxSeries, SeriesM, SeriesU

COEFF_POOL = [Fraction(n, d) for n in range(-5, 6) for d in (1, 2, 3, 5)]
NONZERO_POOL = [q for q in COEFF_POOL if q != 0]


def random_fraction(rng: random.Random, nonzero: bool = False) -> Fraction:
    return rng.choice(NONZERO_POOL if nonzero else COEFF_POOL)


def random_small_fraction(rng: random.Random, bound: Fraction = Fraction(1, 4)) -> Fraction:
    """Nonzero fraction with |value| <= bound."""
    choices = [q for q in NONZERO_POOL if abs(q) <= bound]
    return rng.choice(choices)


def random_poly_series(rng: random.Random, degree: int) -> SeriesU:
    """Random univariate polynomial of degree <= degree."""
    return SeriesU.from_coeffs([random_fraction(rng) for _ in range(degree + 1)])


def random_stream_series(rng: random.Random, horizon: int = 40) -> SeriesU:
    """Random series with an infinite tail (constant beyond the horizon)."""
    values = [random_fraction(rng) for _ in range(horizon)]
    tail = random_fraction(rng, nonzero=True)
    return SeriesU(lambda n: values[n] if n < horizon else tail)


def random_poly_m(rng: random.Random, arity: int, degree: int, terms: int = 8) -> SeriesM:
    """Random multivariate polynomial of total degree <= degree."""
    table = {}
    for _ in range(terms):
        d = rng.randint(0, degree)
        cuts = sorted(rng.randint(0, d) for _ in range(arity - 1))
        alpha = []
        prev = 0
        for c in cuts:
            alpha.append(c - prev)
            prev = c
        alpha.append(d - prev)
        table[tuple(alpha)] = random_fraction(rng, nonzero=True)
    return SeriesM.from_terms(arity, table)


def random_puiseux(
    rng: random.Random,
    ram_choices=(1, 2, 3),
    n_terms: int = 3,
    min_exp: Fraction = Fraction(0),
    max_exp: Fraction = Fraction(4),
) -> PuiseuxSeries:
    """Random nonzero finitely supported element with exponents in range."""
    ram = rng.choice(ram_choices)
    lo = int(min_exp * ram)
    hi = max(lo + 1, int(max_exp * ram))
    exponents = rng.sample(range(lo, hi + 1), min(n_terms, hi - lo + 1))
    terms = {Fraction(e, ram): random_fraction(rng, nonzero=True) for e in exponents}
    return PuiseuxSeries.from_terms(terms)


def random_inbox_coord(rng: random.Random, slack: Fraction = Fraction(1, 2)) -> PuiseuxSeries:
    """Random coordinate certified inside the closed box, with the leading
    coefficient bounded by ``slack`` so there is room to add increments."""
    ram = rng.choice((1, 2))
    lead_exp = Fraction(rng.randint(ram, 2 * ram), ram)
    lead = random_fraction(rng, nonzero=True)
    while abs(lead) > slack:
        lead = random_fraction(rng, nonzero=True)
    terms = {lead_exp: lead}
    for _ in range(rng.randint(0, 2)):
        e = lead_exp + Fraction(rng.randint(1, 3), ram)
        terms.setdefault(e, random_fraction(rng))
    return PuiseuxSeries.from_terms(terms)


def random_box_point(rng: random.Random, arity: int) -> BoxPoint:
    return BoxPoint([random_inbox_coord(rng) for _ in range(arity)])


def puiseux_terms_equal(a: PuiseuxSeries, b: PuiseuxSeries, order) -> bool:
    return a.terms(order) == b.terms(order)


# Canonical-form expression corpus for the parser round-trip tests; every
# entry re-parses to the same AST after rendering.
EXPR_CORPUS = [
    "0",
    "1",
    "42",
    "z",
    "t",
    "x",
    "y",
    "geom",
    "exp",
    "factorial",
    "1 + z",
    "1 - z",
    "-z",
    "z^2",
    "z^3 - z",
    "(1 + z)^3",
    "1/(1 - z)",
    "geom*(1 - z)",
    "z*(1 + z)^2",
    "2*z + 3",
    "3/2",
    "1/2 + 1/3",
    "z/2",
    "-(1 + z)",
    "-z^2",
    "z - z^2 + z^3",
    "exp*exp",
    "geom + exp",
    "derive(factorial)",
    "derive(geom)",
    "derive(z^4)",
    "derive(x*y, x)",
    "derive(x^2 - y^2, y)",
    "x^2 - y^2",
    "2*x*y",
    "x*y + y^2",
    "t^(1/2)",
    "t^(1/2) + 3*t",
    "t^(-1)",
    "t^(3/2) - t^2",
    "t^(-1/2)",
    "1/(1 - t)",
    "t*(1 + t)",
    "(1 + t)*(1 - t)",
    "2*t^(1/3) - t",
    "1/(2 - z)",
    "(exp - 1)/(1 + z)",
    "z^2*z^3",
    "1 - 2*z + 3*z^2 - 4*z^3",
    "derive(derive(factorial))",
]
