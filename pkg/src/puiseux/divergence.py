"""Exact divergence certificates for coefficient streams.

A certificate is a witness index n with |a_n| * r**n > M, checked by
big-integer cross multiplication; no floating point enters anywhere.
Unbounded terms at radius r refute convergence for every |z| = r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fps import SeriesU, Scalar, _as_fraction


@dataclass(frozen=True)
class DivergenceCertificate:
    r: Fraction
    M: Fraction
    n: int
    witness: Fraction  # |a_n| * r**n, exceeds M

    def validate(self) -> bool:
        """Re-check the defining inequality by big-rational comparison."""
        return self.witness > self.M

    def to_json_dict(self) -> dict:
        def frac(q: Fraction) -> dict:
            return {"num": str(q.numerator), "den": str(q.denominator)}

        return {
            "type": "divergence-certificate",
            "r": frac(self.r),
            "M": frac(self.M),
            "n": self.n,
            "witness": frac(self.witness),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DivergenceCertificate":
        def frac(obj) -> Fraction:
            return Fraction(int(obj["num"]), int(obj["den"]))

        return cls(r=frac(data["r"]), M=frac(data["M"]), n=int(data["n"]), witness=frac(data["witness"]))


def term_magnitude(s: SeriesU, r: Scalar, n: int) -> Fraction:
    """|a_n| * r**n, exactly."""
    r = _as_fraction(r)
    if r <= 0:
        raise ValueError("the radius must be positive")
    return abs(s.coeff(n)) * r**n


def certify_divergence(
    s: SeriesU, r: Scalar, M: Scalar, nmax: int
) -> DivergenceCertificate | None:
    """Least n <= nmax with |a_n| * r**n > M, or None when no index
    qualifies.

    The scan compares integers directly (|a_num| * r_num**n * M_den
    against M_num * a_den * r_den**n) so no gcd work happens per step.
    """
    r = _as_fraction(r)
    M = _as_fraction(M)
    if r <= 0:
        raise ValueError("the radius must be positive")
    if M <= 0:
        raise ValueError("the bound must be positive")
    rn, rd = r.numerator, r.denominator
    mn, md = M.numerator, M.denominator
    pow_num, pow_den = 1, 1
    for n in range(nmax + 1):
        if n:
            pow_num *= rn
            pow_den *= rd
        a = s.coeff(n)
        if a == 0:
            continue
        if abs(a.numerator) * pow_num * md > mn * a.denominator * pow_den:
            witness = Fraction(abs(a.numerator) * pow_num, a.denominator * pow_den)
            return DivergenceCertificate(r=r, M=M, n=n, witness=witness)
    return None


def certify_term_decay(s: SeriesU, r: Scalar, M: Scalar, from_n: int, to_n: int) -> bool:
    """True when |a_n| * r**n <= M for every n in [from_n, to_n]."""
    if from_n > to_n:
        raise ValueError("empty index range")
    r = _as_fraction(r)
    M = _as_fraction(M)
    if r <= 0:
        raise ValueError("the radius must be positive")
    rn, rd = r.numerator, r.denominator
    mn, md = M.numerator, M.denominator
    pow_num, pow_den = rn**from_n, rd**from_n
    for n in range(from_n, to_n + 1):
        a = s.coeff(n)
        if a != 0 and abs(a.numerator) * pow_num * md > mn * a.denominator * pow_den:
            return False
        pow_num *= rn
        pow_den *= rd
    return True
