"""Gluing wheels together, as operations on their coloring series.

Gluing a series at one leg differentiates it.  Two-point gluings of a pair of
wheels are kept as brackets; :func:`bracket_to_chain` rewrites a bracket as a
chain coloring whose middle wheel carries ``x^-2``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .diagrams import BracketTerm, ChainPart, DumbbellPart, WheelPart
from .errors import SeriesDomainError, StructureError
from .series import TruncatedSeries, divided_difference, ts_derivative, ts_symmetrize
from .wheels import f_at, fprime, fsecond

__all__ = [
    "glue_wheels_one_point",
    "glue_wheel_into_dumbbell",
    "omega_two_point",
    "bracket_to_chain",
    "glued_derivative",
    "pair_wheels_theta2",
]


def _as_x(s: TruncatedSeries) -> TruncatedSeries:
    if s.variables != ("x",):
        if len(s.variables) != 1:
            raise StructureError(f"a wheel is univariate, got {s.variables}")
        s = s.rename({s.variables[0]: "x"})
    return s


def glue_wheels_one_point(g: WheelPart, h: WheelPart) -> DumbbellPart:
    """One-point gluing of two wheels: ``g'(x) h'(y)``, symmetrized."""
    a, b = _as_x(g.series), _as_x(h.series)
    if a.has_polar() or b.has_polar():
        raise SeriesDomainError("wheel gluing needs polar-free series")
    left = ts_derivative(a, "x")
    right = ts_derivative(b, "x").rename({"x": "y"})
    return DumbbellPart(left * right).canonical()


def _product_terms(d) -> Iterable[tuple[TruncatedSeries, TruncatedSeries]]:
    """Split a dumb-bell into ``u(x) v(y)`` products.

    A list of ``(u, v)`` pairs is taken as given; a series is split monomial
    by monomial.
    """
    if isinstance(d, DumbbellPart):
        s = d.series
        if not set(s.variables) <= {"x", "y"}:
            raise StructureError(f"dumb-bell series must be in x, y, got {s.variables}")
        s = s.extend(("x", "y"))
        for (ex, ey), c in s.items():
            yield (
                TruncatedSeries(("x",), {(ex,): c}, s.cap),
                TruncatedSeries(("x",), {(ey,): 1}, s.cap),
            )
        return
    try:
        pairs = list(d)
    except TypeError:
        raise StructureError(f"cannot read {type(d).__name__} as a sum of products") from None
    for pair in pairs:
        if len(pair) != 2:
            raise StructureError("dumb-bell product terms are (u, v) pairs")
        yield _as_x(pair[0]), _as_x(pair[1])


def glue_wheel_into_dumbbell(g: WheelPart, d) -> ChainPart:
    """Glue a wheel at one leg onto a dumb-bell ``sum u(x) v(y)``.

    Each product gives ``g'(z1) u'(x) v(z2) + g'(z1) v'(x) u(z2)``: the wheel
    that receives the new edge becomes the middle of the chain.
    """
    a = _as_x(g.series)
    if a.has_polar():
        raise SeriesDomainError("wheel gluing needs polar-free series")
    ga = ts_derivative(a, "x").rename({"x": "z1"})
    out = None
    for u, v in _product_terms(d):
        term = (
            ga * ts_derivative(u, "x") * v.rename({"x": "z2"})
            + ga * ts_derivative(v, "x") * u.rename({"x": "z2"})
        )
        out = term if out is None else out + term
    if out is None:
        out = TruncatedSeries.zero(("z1", "x", "z2"), a.cap - 1)
    return ChainPart(out).canonical()


def omega_two_point(a, N: int) -> tuple[BracketTerm, ChainPart]:
    """Two-point gluings of the derived wheels of ``Omega`` against struts of weight ``a``.

    Returns ``a^-2 [f(a x), f(x)]`` and ``1/2 f'(a z1) f''(x) f'(a z2)``.
    """
    a = Fraction(a)
    if not a:
        raise SeriesDomainError("the strut weight must be nonzero")
    work = N + 3
    bracket = BracketTerm(1 / a ** 2, f_at(a, "x", work), f_at(1, "x", work))
    chain = (
        fprime(a).series("z1", N) * fsecond(1).series("x", N) * fprime(a).series("z2", N)
    ).scale(Fraction(1, 2))
    return bracket, ChainPart(chain).canonical()


def glued_derivative(g: TruncatedSeries, var: str) -> TruncatedSeries:
    """Series of a wheel ``g`` with one leg replaced by an edge end, in ``var``.

    Summing the ways a free edge end lands on the legs of ``x^n`` colors the
    two arcs by ``sum_{i+j=n-1} a^i b^j``, the divided difference of ``g``.
    Both arcs belong to the same wheel, so the coloring is read on the
    diagonal ``a = b = var``, which is ``g'(var)``.
    """
    dd = divided_difference(_as_x(g), "_a", "_b")
    return dd.rename({"_a": var, "_b": var})


def bracket_to_chain(b: BracketTerm, N: int) -> ChainPart:
    """Rewrite ``coef [g, h]`` as the chain ``coef/2 g'(z1) x^-2 h'(z2)``, symmetrized.

    The first contact point glues a leg of ``g`` to a leg of ``h`` (one-point
    gluing, ``g' h'``).  The second contact closes a loop through the new edge;
    in the chain presentation with inverse legs that loop is the middle wheel
    colored by ``x^-2``.  The factor 1/2 accounts for the two orders in which
    the contact points can be chosen.  The result is exact to degree
    ``min(N, cap(g) - 3, cap(h) - 3)``.
    """
    if b.is_zero():
        return ChainPart(TruncatedSeries.zero(("z1", "x", "z2"), N))
    g, h = _as_x(b.g), _as_x(b.h)
    if g.has_polar() or h.has_polar():
        raise SeriesDomainError("bracket arguments must be polar-free")
    left = glued_derivative(g, "z1")
    right = glued_derivative(h, "z2")
    middle = TruncatedSeries(("x",), {(-2,): 1}, N + 4)
    chain = (left * middle * right).scale(Fraction(b.coef) / 2)
    return ChainPart(ts_symmetrize(chain.truncate(N).extend(("z1", "x", "z2")), "chain"))


def pair_wheels_theta2(a: WheelPart, b: WheelPart) -> Fraction:
    """Theta_2 coefficient of pairing the 2-leg wheels of ``a`` and ``b``.

    Two legs against two legs admit two perfect matchings, each closing up
    to ``Theta_2``.
    """
    sa, sb = _as_x(a.series), _as_x(b.series)
    return 2 * sa.coeff((2,)) * sb.coeff((2,))
