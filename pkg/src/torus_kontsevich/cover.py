"""Cyclic branched coverings: the lift operator and LMO coefficients of Brieskorn spheres."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .diagrams import RationalColoring, WheelPart
from .errors import LiftDomainError, ParameterError, VerificationError
from .exact import FactoredRationalFn, LaurentPoly, cyclotomic_multiplier
from .glue import pair_wheels_theta2
from .pipeline import TorusParams, z3_rational
from .series import TruncatedSeries
from .wheels import c_series

__all__ = [
    "CoverParams",
    "lift_edge",
    "lift_part",
    "lmo_theta2",
    "lmo_theta3",
    "lmo_theta2_formula",
    "OMEGA_PAIRING",
    "THETA3_IS_CONJECTURAL",
]

OMEGA_PAIRING = Fraction(1, 1152)
# the degree 3 coefficient assumes the lift scales loop degree 4 by r^3
THETA3_IS_CONJECTURAL = True


@dataclass(frozen=True)
class CoverParams:
    p: int
    q: int
    r: int
    sigma_r: Optional[int] = None

    def __post_init__(self):
        TorusParams(self.p, self.q)
        if self.r < 1:
            raise ParameterError(f"covering order must be positive, got {self.r}")
        if gcd(self.r, self.p) != 1 or gcd(self.r, self.q) != 1:
            raise ParameterError(
                f"r={self.r} must be coprime with p={self.p} and q={self.q}"
            )

    @property
    def torus(self) -> TorusParams:
        return TorusParams(self.p, self.q)


def lift_edge(rf: FactoredRationalFn, r: int) -> FactoredRationalFn:
    """Lift one edge decoration along the ``r``-fold covering.

    Denominators are rewritten in ``t^r`` by multiplying through with
    ``1 + t^n + ... + t^(n(r-1))``; numerator monomials with exponent divisible
    by ``r`` are kept with the exponent divided by ``r``; the original
    denominators are restored.  The overall factor ``r`` is applied per
    diagram by :func:`lift_part`, not here.
    """
    if r < 1:
        raise ParameterError(f"covering order must be positive, got {r}")
    for n, _ in rf.den_factors:
        if gcd(n, r) != 1:
            raise LiftDomainError(f"denominator t^{n} - 1 is not coprime with r={r}")
    num = rf.numerator_poly()
    for n, m in rf.den_factors:
        num = num * cyclotomic_multiplier(n, r) ** m
    kept = LaurentPoly.from_coeffs({e // r: c for (e,), c in num.items() if e % r == 0})
    return FactoredRationalFn(1, 0, kept, rf.den_factors)


def lift_part(part: RationalColoring, r: int) -> RationalColoring:
    """Lift every edge of a connected loop-degree >= 2 coloring, then multiply by ``r`` once."""
    if len(part.edges) < 2:
        raise ParameterError("lift_part applies to dumb-bell and chain colorings only")
    terms = [(c * r, tuple(lift_edge(f, r) for f in fs)) for c, fs in part.terms]
    return RationalColoring(part.edges, terms)


def lmo_theta2_formula(p: int, q: int, r: int) -> Fraction:
    return Fraction((p * p - 1) * (q * q - 1) * (r * r - 1), 1152)


def lmo_theta2(cover: CoverParams) -> Fraction:
    """Degree-2 LMO coefficient of the Brieskorn sphere ``Sigma(p, q, r)``.

    Pipeline route: the lifted rational 3-loop part carries the closed
    ``Theta_2`` term (read off its ``z1 x^-2 z2`` coefficient), the 1-loop
    part is unchanged by the lift and pairs with the 2-wheel of ``Omega``, and
    ``<Omega, Omega>`` is subtracted.  The result must match the closed
    formula ``(p^2-1)(q^2-1)(r^2-1)/1152``.
    """
    p, q, r = cover.p, cover.q, cover.r
    lifted = lift_part(z3_rational(TorusParams(p, q, 2)), r)
    closed = lifted.hair(2).extend(("z1", "x", "z2")).coeff({"z1": 1, "x": -2, "z2": 1})
    omega2 = WheelPart(TruncatedSeries(("x",), {(2,): Fraction(1, 48)}, 2))
    wheel = pair_wheels_theta2(WheelPart(c_series(p, q, 2)), omega2)
    value = closed + wheel - OMEGA_PAIRING
    expected = lmo_theta2_formula(p, q, r)
    if value != expected:
        raise VerificationError(f"pipeline Theta_2 {value} differs from closed formula {expected}")
    return value


def lmo_theta3(cover: CoverParams) -> Fraction:
    """Conjectural degree-3 LMO coefficient ``-pqr(p^2-1)(q^2-1)(r^2-1)/13824``.

    Valid only if the lift also scales loop degree 4 by ``r^3``; see
    :data:`THETA3_IS_CONJECTURAL`.
    """
    p, q, r = cover.p, cover.q, cover.r
    return Fraction(-p * q * r * (p * p - 1) * (q * q - 1) * (r * r - 1), 13824)
