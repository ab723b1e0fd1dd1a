"""The wheel series ``f``, its derivatives and their hyperbolic closed forms.

``f(x) = 1/2 log(sinh(x/2)/(x/2))`` is expanded from the exact sinh series.
Its derivatives split as a rational function of ``t = exp(x)`` plus a pole::

    f'(n x)  = 1/4 (t^n + 1)/(t^n - 1)  - 1/(2 n x)
    f''(n x) = -1/2 t^n/(t^n - 1)^2     + 1/(2 n^2 x^2)

Linear combinations such as ``c'(x) = p f'(px) + q f'(qx) - pq f'(pqx)`` are
carried as :class:`EdgeFn` so callers can pick the full series, the
hyperbolic part or the polar part of every piece.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

from .errors import ParameterError
from .exact import FactoredRationalFn, LaurentPoly
from .series import (
    TruncatedSeries,
    hair_expand,
    ts_derivative,
    ts_log,
    ts_scale_var,
)

__all__ = [
    "HyperbolicForm",
    "EdgeFn",
    "f_series",
    "f_at",
    "c_series",
    "fprime_forms",
    "fsecond_forms",
    "fprime",
    "fsecond",
    "cprime",
    "csecond",
    "check_torus_params",
]


def check_torus_params(p: int, q: int) -> None:
    if p < 1 or q == 0:
        raise ParameterError(f"need p >= 1 and q != 0, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ParameterError(f"p and q must be coprime, got ({p}, {q})")


@dataclass(frozen=True)
class HyperbolicForm:
    """``F1(n) = (t^n + 1)/(t^n - 1)`` or ``F2(n) = t^n/(t^n - 1)^2``."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("F1", "F2"):
            raise ValueError(f"kind must be F1 or F2, not {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"scale must be positive, got {self.n}")

    def to_rational(self) -> FactoredRationalFn:
        n = self.n
        if self.kind == "F1":
            return FactoredRationalFn(1, 0, LaurentPoly.from_coeffs({n: 1, 0: 1}), [(n, 1)])
        return FactoredRationalFn(1, n, LaurentPoly.constant(1), [(n, 2)])


@lru_cache(maxsize=None)
def f_series(N: int, var: str = "x") -> TruncatedSeries:
    """``1/2 log(sinh(x/2)/(x/2))`` exact to degree ``N``."""
    if N < 2:
        raise ParameterError("f_series needs N >= 2")
    sinh_ratio = TruncatedSeries(
        (var,),
        {(2 * k,): Fraction(1, 4 ** k * factorial(2 * k + 1)) for k in range(N // 2 + 1)},
        N,
    )
    return ts_log(sinh_ratio).scale(Fraction(1, 2))


def f_at(n, var: str, N: int) -> TruncatedSeries:
    """``f(n*var)``."""
    return ts_scale_var(f_series(N, var), var, n)


def c_series(p: int, q: int, N: int, var: str = "x") -> TruncatedSeries:
    """``c(x) = f(px) + f(qx) - f(pqx)``."""
    check_torus_params(p, q)
    return f_at(p, var, N) + f_at(q, var, N) - f_at(p * q, var, N)


@lru_cache(maxsize=None)
def _derivative_series(order: int, n: int, var: str, N: int) -> TruncatedSeries:
    s = f_series(N + order, var)
    for _ in range(order):
        s = ts_derivative(s, var)
    return ts_scale_var(s, var, n)


def _hyper(order: int, n: int) -> FactoredRationalFn:
    if order == 1:
        return HyperbolicForm("F1", n).to_rational() * Fraction(1, 4)
    return HyperbolicForm("F2", n).to_rational() * Fraction(-1, 2)


def _polar(order: int, n: int, var: str, N: int) -> TruncatedSeries:
    if order == 1:
        return TruncatedSeries((var,), {(-1,): Fraction(-1, 2 * n)}, N)
    return TruncatedSeries((var,), {(-2,): Fraction(1, 2 * n * n)}, N)


def fprime_forms(n: int, N: int = 8, var: str = "x") -> tuple[FactoredRationalFn, TruncatedSeries]:
    """``f'(n x)`` as ``(1/4 F1(n), -1/(2 n x))``."""
    if n < 1:
        raise ParameterError(f"scale must be positive, got {n}")
    return _hyper(1, n), _polar(1, n, var, N)


def fsecond_forms(n: int, N: int = 8, var: str = "x") -> tuple[FactoredRationalFn, TruncatedSeries]:
    """``f''(n x)`` as ``(-1/2 F2(n), 1/(2 n^2 x^2))``."""
    if n < 1:
        raise ParameterError(f"scale must be positive, got {n}")
    return _hyper(2, n), _polar(2, n, var, N)


@dataclass(frozen=True)
class EdgeFn:
    """A combination ``sum coef * f^(order)(n * var)`` decorating one wheel.

    ``pieces`` holds ``(coef, order, n)`` with ``order`` 1 or 2 and ``n > 0``.
    """

    pieces: tuple

    def series(self, var: str, N: int) -> TruncatedSeries:
        out = TruncatedSeries.zero((var,), N)
        for coef, order, n in self.pieces:
            out = out + _derivative_series(order, n, var, N).scale(coef)
        return out

    def hyperbolic(self) -> list[tuple[Fraction, FactoredRationalFn]]:
        """``(coef, rational function of t)`` pairs; the scalar is folded into ``coef``."""
        out = []
        for coef, order, n in self.pieces:
            c, unit = _hyper(order, n).monic()
            out.append((Fraction(coef) * c, unit))
        return out

    def hyperbolic_series(self, var: str, N: int) -> TruncatedSeries:
        out = TruncatedSeries.zero((var,), N)
        for coef, rf in self.hyperbolic():
            out = out + hair_expand(rf, var, N).scale(coef)
        return out

    def polar(self, var: str, N: int) -> TruncatedSeries:
        out = TruncatedSeries.zero((var,), N)
        for coef, order, n in self.pieces:
            out = out + _polar(order, n, var, N).scale(coef)
        return out

    @property
    def order(self) -> int:
        return max(o for _, o, _ in self.pieces)

    def __neg__(self):
        return EdgeFn(tuple((-Fraction(c), o, n) for c, o, n in self.pieces))

    def scaled(self, a) -> "EdgeFn":
        return EdgeFn(tuple((Fraction(a) * c, o, n) for c, o, n in self.pieces))


def fprime(n: int) -> EdgeFn:
    """``f'(n x)``; ``f'`` is odd, so a negative scale flips the sign."""
    if n == 0:
        raise ParameterError("scale must be nonzero")
    return EdgeFn(((Fraction(1 if n > 0 else -1), 1, abs(n)),))


def fsecond(n: int) -> EdgeFn:
    """``f''(n x)``; ``f''`` is even."""
    if n == 0:
        raise ParameterError("scale must be nonzero")
    return EdgeFn(((Fraction(1), 2, abs(n)),))


def cprime(p: int, q: int) -> EdgeFn:
    """``c'(x) = p f'(px) + q f'(qx) - pq f'(pqx)``."""
    check_torus_params(p, q)
    q = abs(q)
    return EdgeFn(((Fraction(p), 1, p), (Fraction(q), 1, q), (Fraction(-p * q), 1, p * q)))


def csecond(p: int, q: int) -> EdgeFn:
    """``c''(x) = p^2 f''(px) + q^2 f''(qx) - p^2 q^2 f''(pqx)``."""
    check_torus_params(p, q)
    q = abs(q)
    return EdgeFn(((Fraction(p * p), 2, p), (Fraction(q * q), 2, q), (Fraction(-p * p * q * q), 2, p * q)))
