"""Unwheeled Kontsevich integral of torus knots through loop degree 3.

The series route follows the three steps of the computation (braid closure
exponent, leg rescaling, unwheeling) and the closed formula they produce.
The rational route replaces ``f'`` and ``f''`` by their hyperbolic parts; the
difference on the chain lines is the fractional residual, which the bracket
line cancels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .diagrams import (
    BracketTerm,
    ChainPart,
    ClosedPart,
    DumbbellPart,
    LoopGradedInvariant,
    RationalColoring,
    WheelPart,
    canonicalize,
    scale_invariant_legs,
)
from .errors import ParameterError, VerificationError
from .exact import FactoredRationalFn, alexander_torus
from .glue import bracket_to_chain, omega_two_point
from .series import TruncatedSeries, hair_expand, ts_log, ts_symmetrize
from .wheels import (
    EdgeFn,
    HyperbolicForm,
    c_series,
    cprime,
    csecond,
    f_at,
    f_series,
    fprime,
    fsecond,
)

__all__ = [
    "TorusParams",
    "step1_exponent",
    "rescale_legs",
    "unwheel_assemble",
    "star_formula",
    "z1_rational",
    "z1_rational_series",
    "z2_rational",
    "z3_rational",
    "z3_chain_terms",
    "z3_lines_series",
    "zprime3_series",
    "fractional_residual",
    "bracket_line",
    "cancellation_chain",
    "closed_theta2_z3",
    "closed_theta2_formula",
    "verify_closed_normalization",
]

CHAIN = ("z1", "x", "z2")
# brackets lose three degrees when rewritten as chains
BRACKET_MARGIN = 3


@dataclass(frozen=True)
class TorusParams:
    p: int
    q: int
    N: int = 8

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError(f"p must be positive, got {self.p}")
        if self.q == 0:
            raise ParameterError("q must be nonzero")
        if gcd(self.p, self.q) != 1:
            raise ParameterError(f"p and q must be coprime, got ({self.p}, {self.q})")
        if self.N < 2:
            raise ParameterError(f"degree cap must be at least 2, got {self.N}")

    @property
    def pq(self) -> int:
        return self.p * self.q

    def swapped(self) -> "TorusParams":
        """``K(q, p)``; only meaningful for positive ``q``."""
        return TorusParams(self.q, self.p, self.N)


def _chain(a: EdgeFn, b: EdgeFn, c: EdgeFn, coef, N: int) -> TruncatedSeries:
    """``coef * a(z1) b(x) c(z2)`` with ``b`` on the middle wheel."""
    return (a.series("z1", N) * b.series("x", N) * c.series("z2", N)).scale(coef)


def _sum(parts, variables, N) -> TruncatedSeries:
    out = TruncatedSeries.zero(variables, N)
    for s in parts:
        out = out + s
    return out


def step1_exponent(params: TorusParams) -> LoopGradedInvariant:
    """Connected exponent of ``d_Omega(Omega exp(q/(2p) strut))``.

    strut ``q/(2p)``; wheels ``f(x) + f(a x)``; dumb-bell ``f'(y) f'(a x)``;
    chains ``1/2 f'(z1) f''(a x) f'(z2) + 1/2 f'(a z1) f''(x) f'(a z2)``;
    bracket ``a^-2 [f(a x), f(x)]``, with ``a = q/p``.
    """
    p, q, N = params.p, params.q, params.N
    a = Fraction(q, p)
    wheels = f_series(N) + f_at(a, "x", N)
    dumbbell = fprime(1).series("y", N) * fprime(a).series("x", N)
    bracket, omega_chain = omega_two_point(a, N)
    chains = _chain(fprime(1), fsecond(a), fprime(1), Fraction(1, 2), N) + omega_chain.series
    return canonicalize(
        LoopGradedInvariant(
            strut=Fraction(q, 2 * p),
            z1=WheelPart(wheels),
            z2=DumbbellPart(dumbbell),
            z3_chain=ChainPart(chains),
            z3_brackets=(bracket,),
        )
    )


def rescale_legs(inv: LoopGradedInvariant, p) -> LoopGradedInvariant:
    """Closing the braid: every diagram picks up a factor ``p`` per leg."""
    return canonicalize(scale_invariant_legs(inv, p))


def _derivation_chain(p: int, q: int, N: int) -> TruncatedSeries:
    """Action of ``Omega~^-1`` by derivation on the 2-loop part.

    ``-f'(pq z1) [p f''(px) f'(q z2) + q f''(qx) f'(p z2) - pq f''(pq x) c'(z2)]``;
    in the last product the wheel carrying ``f''`` is the middle one.
    """
    pq = p * q
    return _sum(
        [
            _chain(fprime(pq), fsecond(p), fprime(q), -p, N),
            _chain(fprime(pq), fsecond(q), fprime(p), -q, N),
            _chain(fprime(pq), fsecond(pq), cprime(p, q), pq, N),
        ],
        CHAIN,
        N,
    )


def unwheel_assemble(params: TorusParams) -> LoopGradedInvariant:
    """Step 3: unwheel the rescaled exponent and restore framing 0."""
    p, q, N = params.p, params.q, params.N
    pq = p * q
    closed = rescale_legs(step1_exponent(params), p)
    work = N + BRACKET_MARGIN
    u_bracket = BracketTerm(Fraction(-1, pq * pq), f_at(pq, "x", work), c_series(p, q, work))
    u_chain = _chain(fprime(pq), csecond(p, q), fprime(pq), Fraction(1, 2), N)
    square = _chain(cprime(p, q), fsecond(pq), cprime(p, q), Fraction(-1, 2), N)
    dumbbell_fix = -(cprime(p, q).series("x", N) * fprime(pq).series("y", N))
    return canonicalize(
        LoopGradedInvariant(
            strut=closed.strut - Fraction(pq, 2),
            z1=WheelPart(closed.z1.series - f_at(pq, "x", N)),
            z2=DumbbellPart(closed.z2.series + dumbbell_fix),
            z3_chain=ChainPart(
                closed.z3_chain.series + u_chain + square + _derivation_chain(p, q, N)
            ),
            z3_brackets=closed.z3_brackets + (u_bracket,),
            closed=ClosedPart(theta2=closed_theta2_formula(p, q)),
        )
    )


def z3_chain_terms(p: int, q: int) -> list[tuple[EdgeFn, EdgeFn, EdgeFn, Fraction]]:
    """The chain lines of the 3-loop part as ``(z1 edge, x edge, z2 edge, coef)``."""
    pq = p * q
    half = Fraction(1, 2)
    return [
        (fprime(p), fsecond(q), fprime(p), half),
        (fprime(q), fsecond(p), fprime(q), half),
        (fprime(pq), csecond(p, q), fprime(pq), half),
        (cprime(p, q), fsecond(pq), cprime(p, q), -half),
        (fprime(pq), fsecond(p), fprime(q), Fraction(-p)),
        (fprime(pq), fsecond(q), fprime(p), Fraction(-q)),
        (fprime(pq), fsecond(pq), cprime(p, q), Fraction(pq)),
    ]


def z3_lines_series(params: TorusParams) -> TruncatedSeries:
    """Full-series chain lines of the 3-loop part, symmetrized."""
    N = params.N
    parts = [_chain(a, b, c, k, N) for a, b, c, k in z3_chain_terms(params.p, params.q)]
    return ts_symmetrize(_sum(parts, CHAIN, N), "chain")


def bracket_line(params: TorusParams) -> tuple[BracketTerm, ...]:
    """``1/(pq)^2 ([f(qx), f(px)] - [f(pqx), c(x)])`` with arguments at ``N + 3``."""
    p, q = params.p, params.q
    pq = p * q
    work = params.N + BRACKET_MARGIN
    k = Fraction(1, pq * pq)
    return (
        BracketTerm(k, f_at(q, "x", work), f_at(p, "x", work)),
        BracketTerm(-k, f_at(pq, "x", work), c_series(p, q, work)),
    )


def star_formula(params: TorusParams) -> LoopGradedInvariant:
    """The unwheeled invariant through loop degree 3 as explicit series."""
    p, q, N = params.p, params.q, params.N
    pq = p * q
    z2 = fprime(p).series("y", N) * fprime(q).series("x", N) - (
        cprime(p, q).series("x", N) * fprime(pq).series("y", N)
    )
    return canonicalize(
        LoopGradedInvariant(
            strut=Fraction(0),
            z1=WheelPart(c_series(p, q, N)),
            z2=DumbbellPart(z2),
            z3_chain=ChainPart(z3_lines_series(params)),
            z3_brackets=bracket_line(params),
            closed=ClosedPart(theta2=closed_theta2_formula(p, q)),
        )
    )


def z1_rational(params: TorusParams) -> FactoredRationalFn:
    """The 1-loop rational form: the Alexander polynomial (the part is ``-1/2 log`` of it)."""
    return alexander_torus(params.p, params.q)


def z1_rational_series(params: TorusParams) -> TruncatedSeries:
    """``-1/2 log D_{p,q}(exp(x))``."""
    return ts_log(hair_expand(z1_rational(params), "x", params.N)).scale(Fraction(-1, 2))


def _F1(n: int) -> FactoredRationalFn:
    return HyperbolicForm("F1", n).to_rational()


def z2_rational(params: TorusParams) -> RationalColoring:
    """The 2-loop part as a dumb-bell coloring by ``F1`` factors in ``t = e^x``, ``s = e^y``."""
    p, q = params.p, abs(params.q)
    sign = 1 if params.q > 0 else -1
    pq = p * q
    k = Fraction(1, 32)
    terms = [
        (2 * pq, (_F1(pq), _F1(pq))),
        (-p, (_F1(pq), _F1(p))),
        (-q, (_F1(pq), _F1(q))),
        (-p, (_F1(p), _F1(pq))),
        (-q, (_F1(q), _F1(pq))),
        (1, (_F1(p), _F1(q))),
        (1, (_F1(q), _F1(p))),
    ]
    # f' is odd: K(p, -q) flips the sign of every q-scaled edge pair
    return RationalColoring(("x", "y"), [(sign * k * c, fs) for c, fs in terms])


def z3_rational(params: TorusParams) -> RationalColoring:
    """Chain lines with ``f' -> 1/4 F1`` and ``f'' -> -1/2 F2``, symmetrized."""
    terms = []
    for a, b, c, k in z3_chain_terms(params.p, params.q):
        for ca, ra in a.hyperbolic():
            for cb, rb in b.hyperbolic():
                for cc, rc in c.hyperbolic():
                    terms.append((k * ca * cb * cc, (ra, rb, rc)))
    return RationalColoring(CHAIN, terms).symmetrized()


def zprime3_series(params: TorusParams) -> TruncatedSeries:
    """``-1/(2pq) [f'(p z1) x^-2 f'(q z2) - c'(z1) x^-2 f'(pq z2)]``, symmetrized."""
    p, q, N = params.p, params.q, params.N
    pq = p * q
    work = N + 4
    inv_sq = TruncatedSeries(("x",), {(-2,): 1}, work)
    body = fprime(p).series("z1", work) * inv_sq * fprime(q).series("z2", work) - (
        cprime(p, q).series("z1", work) * inv_sq * fprime(pq).series("z2", work)
    )
    return ts_symmetrize(body.scale(Fraction(-1, 2 * pq)).truncate(N), "chain")


@lru_cache(maxsize=64)
def _z3_rational_hair(params: TorusParams) -> TruncatedSeries:
    return z3_rational(params).hair(params.N).extend(CHAIN)


def fractional_residual(params: TorusParams) -> ChainPart:
    """Chain lines minus their hyperbolic-only version."""
    return ChainPart(z3_lines_series(params) - _z3_rational_hair(params))


def closed_theta2_formula(p: int, q: int) -> Fraction:
    return Fraction((p * p - 1) * (q * q - 1), 1152)


def closed_theta2_z3(params: TorusParams) -> Fraction:
    """Theta_2 coefficient carried by the ``z1 x^-2 z2`` term of the rational 3-loop part.

    That term is legless, so it is a closed diagram; its coefficient in the
    hair of the rational chain coloring must equal ``(p^2-1)(q^2-1)/1152``.
    """
    value = closed_theta2_formula(params.p, params.q)
    small = TorusParams(params.p, params.q, 2)
    extracted = _z3_rational_hair(small).coeff({"z1": 1, "x": -2, "z2": 1})
    if extracted != value:
        raise VerificationError(
            f"closed Theta_2 term {extracted} differs from (p^2-1)(q^2-1)/1152 = {value}"
        )
    return value


def verify_closed_normalization(params: TorusParams) -> bool:
    """Wheel pairing plus the closed 3-loop term reproduce ``<Omega, Omega> = 1/1152``."""
    from .glue import pair_wheels_theta2

    omega2 = WheelPart(TruncatedSeries(("x",), {(2,): Fraction(1, 48)}, 2))
    z1 = WheelPart(c_series(params.p, params.q, max(params.N, 2)))
    total = pair_wheels_theta2(z1, omega2) + closed_theta2_z3(params)
    return total == Fraction(1, 1152)


def cancellation_chain(params: TorusParams) -> ChainPart:
    """Chain image of the bracket line."""
    out = None
    for b in bracket_line(params):
        c = bracket_to_chain(b, params.N)
        out = c if out is None else out + c
    return out.canonical()
