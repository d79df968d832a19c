"""Deterministic text and JSON rendering of computed values.

Text mode prints terms in ascending order with an O(.) tail marker; JSON
mode carries every coefficient as exact numerator/denominator decimal
strings, never as floats.
"""

from __future__ import annotations

from fractions import Fraction

from .fps import SeriesU, Scalar, _as_fraction
from .field import PuiseuxSeries
from .complexfield import ComplexPuiseux


def frac_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _term(coefficient: Fraction, symbol: str) -> str:
    """One rendered term, e.g. '3/2*z^2', 'z', '-t^(1/2)'."""
    if not symbol:
        return str(coefficient)
    if coefficient == 1:
        return symbol
    if coefficient == -1:
        return f"-{symbol}"
    return f"{coefficient}*{symbol}"


def _join_terms(parts: list[str], tail: str | None) -> str:
    if tail is not None:
        parts = parts + [tail]
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += f" - {part[1:]}"
        else:
            out += f" + {part}"
    return out


def _z_symbol(exponent: int, variable: str) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return variable
    return f"{variable}^{exponent}"


def _t_symbol(exponent: Fraction) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return "t"
    if exponent.denominator == 1 and exponent > 0:
        return f"t^{exponent}"
    return f"t^({exponent.numerator}/{exponent.denominator})"


def series_text(s: SeriesU, order: int, variable: str = "z") -> str:
    if s.definitely_zero():
        return "0"
    parts = [
        _term(s.coeff(n), _z_symbol(n, variable)) for n in range(order) if s.coeff(n)
    ]
    tail = None
    if s.support_bound is None or s.support_bound > order:
        tail = f"O({variable}^{order})"
    return _join_terms(parts, tail)


def series_json(s: SeriesU, order: int, variable: str = "z") -> dict:
    return {
        "type": "series",
        "variable": variable,
        "order": order,
        "coefficients": [frac_json(s.coeff(n)) for n in range(order)],
    }


def puiseux_text(p: PuiseuxSeries, order: Scalar) -> str:
    if p.definitely_zero():
        return "0"
    order = _as_fraction(order)
    parts = [_term(c, _t_symbol(e)) for e, c in p.terms(order)]
    tail = None
    if not _support_exhausted(p, order):
        tail = f"O({_tail_exponent(order)})"
    return _join_terms(parts, tail)


def _support_exhausted(p: PuiseuxSeries, order: Fraction) -> bool:
    if p.u.support_bound is None:
        return False
    last = Fraction(p.start + p.u.support_bound - 1, p.ram)
    return last <= order


def _tail_exponent(order: Fraction) -> str:
    if order.denominator == 1:
        return f"t^{order}"
    return f"t^({order.numerator}/{order.denominator})"


def puiseux_json(p: PuiseuxSeries, order: Scalar) -> dict:
    order = _as_fraction(order)
    return {
        "type": "puiseux",
        "order": frac_json(order),
        "terms": [
            {"exp": frac_json(e), "coeff": frac_json(c)} for e, c in p.terms(order)
        ],
    }


def complex_text(z: ComplexPuiseux, order: Scalar) -> str:
    return f"({puiseux_text(z.re, order)}) + ({puiseux_text(z.im, order)})*i"


def complex_json(z: ComplexPuiseux, order: Scalar) -> dict:
    return {
        "type": "complex",
        "re": puiseux_json(z.re, order),
        "im": puiseux_json(z.im, order),
    }


def rational_text(q: Fraction) -> str:
    return str(q)


def rational_json(q: Fraction) -> dict:
    return {"type": "rational", **frac_json(q)}


def value_text(value, order: Scalar) -> str:
    if isinstance(value, Fraction):
        return rational_text(value)
    if isinstance(value, SeriesU):
        return series_text(value, int(order))
    if isinstance(value, PuiseuxSeries):
        return puiseux_text(value, order)
    if isinstance(value, ComplexPuiseux):
        return complex_text(value, order)
    raise TypeError(f"cannot render {type(value).__name__} as text")


def value_json(value, order: Scalar) -> dict:
    if isinstance(value, Fraction):
        return rational_json(value)
    if isinstance(value, SeriesU):
        return series_json(value, int(order))
    if isinstance(value, PuiseuxSeries):
        return puiseux_json(value, order)
    if isinstance(value, ComplexPuiseux):
        return complex_json(value, order)
    raise TypeError(f"cannot render {type(value).__name__} as JSON")
