"""Truncated multivariate Laurent series with exact rational coefficients.

A :class:`TruncatedSeries` stores coefficients for every exponent vector of
total degree ``<= cap``; anything above the cap is unknown, not zero.  Series
in the diagram variables ``z1, x, z2, y, h`` always keep their variables in
that canonical order so that chain monomials read ``z1^a*x^b*z2^c``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .errors import PolarOverflowError, SeriesDomainError
from .exact import FactoredRationalFn, format_monomial, format_scalar, _format_terms

__all__ = [
    "POLAR_LIMIT",
    "TruncatedSeries",
    "ts_arith",
    "ts_exp",
    "ts_log",
    "ts_scale_var",
    "ts_derivative",
    "ts_polar_split",
    "ts_symmetrize",
    "hair_expand",
    "divided_difference",
    "exp_series",
]

POLAR_LIMIT = 6

_RANK = {"z1": 0, "x": 1, "z2": 2, "y": 3, "h": 4}


def _order(variables: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(variables), key=lambda v: (_RANK.get(v, 99), v)))


class TruncatedSeries:
    """Exact Laurent series truncated at total degree ``cap``."""

    __slots__ = ("variables", "_terms", "cap")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None, cap: int = 8):
        given = tuple(variables)
        self.variables = _order(given)
        self.cap = int(cap)
        perm = [given.index(v) for v in self.variables]
        out: dict = {}
        for exps, c in (terms or {}).items():
            if isinstance(exps, int):
                exps = (exps,)
            if len(exps) != len(given):
                raise ValueError(f"exponent {exps} does not match variables {given}")
            c = Fraction(c)
            if not c or sum(exps) > self.cap:
                continue
            key = tuple(int(exps[i]) for i in perm)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        self._terms = out

    # construction

    @classmethod
    def zero(cls, variables=("x",), cap: int = 8) -> "TruncatedSeries":
        return cls(variables, {}, cap)

    @classmethod
    def constant(cls, c, variables=("x",), cap: int = 8) -> "TruncatedSeries":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c}, cap)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], c=1, cap: int = 8, variables=None) -> "TruncatedSeries":
        variables = tuple(variables) if variables is not None else tuple(exps)
        return cls(variables, {tuple(exps.get(v, 0) for v in variables): c}, cap)

    @classmethod
    def univariate(cls, coeffs: Mapping[int, object], var: str = "x", cap: int = 8) -> "TruncatedSeries":
        return cls((var,), {(e,): c for e, c in coeffs.items()}, cap)

    # accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def named_items(self):
        """``({var: exp}, coef)`` pairs with zero exponents dropped, sorted."""
        return [
            ({v: e for v, e in zip(self.variables, exps) if e}, c) for exps, c in self.items()
        ]

    def coeff(self, exps=None, **named) -> Fraction:
        """Coefficient of a monomial given as a tuple, an int, or by name."""
        if exps is None:
            exps = named
        if isinstance(exps, Mapping):
            if any(v not in self.variables and e for v, e in exps.items()):
                return Fraction(0)
            exps = tuple(exps.get(v, 0) for v in self.variables)
        elif isinstance(exps, int):
            exps = (exps,)
        exps = tuple(exps)
        if sum(exps) > self.cap:
            raise SeriesDomainError(f"degree {sum(exps)} is above the cap {self.cap}")
        return self._terms.get(exps, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def valuation(self) -> int:
        """Smallest total degree present; the cap plus one for the zero series."""
        if not self._terms:
            return self.cap + 1
        return min(sum(e) for e in self._terms)

    def min_exp(self, var: str) -> int:
        i = self.variables.index(var)
        return min((e[i] for e in self._terms), default=0)

    @property
    def polar_depth(self) -> int:
        """Largest pole order in any single variable."""
        if not self._terms:
            return 0
        return max(0, -min(min(e) for e in self._terms))

    def polar_depth_in(self, var: str) -> int:
        return max(0, -self.min_exp(var)) if var in self.variables else 0

    def has_polar(self) -> bool:
        return self.polar_depth > 0

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    # variable management

    def extend(self, variables: Iterable[str]) -> "TruncatedSeries":
        new = _order(tuple(self.variables) + tuple(variables))
        if new == self.variables:
            return self
        idx = [self.variables.index(v) if v in self.variables else None for v in new]
        terms = {
            tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self._terms.items()
        }
        return TruncatedSeries(new, terms, self.cap)

    def rename(self, mapping: Mapping[str, str]) -> "TruncatedSeries":
        """Rename variables; several old names may map to one new name (diagonal)."""
        new_names = [mapping.get(v, v) for v in self.variables]
        target = _order(new_names)
        out: dict = {}
        for e, c in self._terms.items():
            key = [0] * len(target)
            for v, k in zip(new_names, e):
                key[target.index(v)] += k
            key = tuple(key)
            out[key] = out.get(key, 0) + c
        return TruncatedSeries(target, out, self.cap)

    def _aligned(self, other: "TruncatedSeries"):
        if self.variables == other.variables:
            return self, other
        both = tuple(self.variables) + tuple(other.variables)
        return self.extend(both), other.extend(both)

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variables, self._terms, min(cap, self.cap))

    def with_cap(self, cap: int) -> "TruncatedSeries":
        """Restrict to ``cap``; raising the cap is refused (coefficients unknown)."""
        if cap > self.cap:
            raise SeriesDomainError(f"cannot raise cap {self.cap} to {cap}")
        return self.truncate(cap)

    # ring operations

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.variables, self.cap)
        a, b = self._aligned(other)
        out = dict(a._terms)
        for e, c in b._terms.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(a.variables, out, min(a.cap, b.cap))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, {e: -c for e, c in self._terms.items()}, self.cap)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.variables, self.cap)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.variables, {e: c * v for e, v in self._terms.items()}, self.cap)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        a, b = self._aligned(other)
        va = min(a.valuation(), 0) if a._terms else 0
        vb = min(b.valuation(), 0) if b._terms else 0
        cap = min(a.cap + vb, b.cap + va)
        by_deg: dict[int, list] = {}
        for e, c in b._terms.items():
            by_deg.setdefault(sum(e), []).append((e, c))
        b_degs = sorted(by_deg)
        out: dict = {}
        for e1, c1 in a._terms.items():
            d1 = sum(e1)
            for d2 in b_degs:
                if d1 + d2 > cap:
                    break
                for e2, c2 in by_deg[d2]:
                    e = tuple(x + y for x, y in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        res = TruncatedSeries(a.variables, out, cap)
        if res.polar_depth > POLAR_LIMIT:
            raise PolarOverflowError(f"polar depth {res.polar_depth} exceeds {POLAR_LIMIT}")
        return res

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / Fraction(c))

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return ts_inverse(self) ** (-k)
        out = TruncatedSeries.constant(1, self.variables, self.cap)
        for _ in range(k):
            out = out * self
        return out

    # comparison

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            if isinstance(other, (int, Fraction)):
                other = TruncatedSeries.constant(other, self.variables, self.cap)
            else:
                return NotImplemented
        a, b = self._aligned(other)
        cap = min(a.cap, b.cap)
        return a.truncate(cap)._terms == b.truncate(cap)._terms

    __hash__ = None

    def difference_report(self, other: "TruncatedSeries", limit: int = 5) -> str:
        d = self - other
        return "; ".join(f"{format_monomial(d.variables, e) or '1'}: {format_scalar(c)}"
                         for e, c in d.items()[:limit])

    # display

    def __str__(self):
        body = _format_terms(self.variables, self.items())
        return f"{body} + O({self.cap + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def to_dict(self) -> dict[str, str]:
        """``{"x^2": "-23/48", ...}`` keyed by rendered monomial."""
        return {format_monomial(self.variables, e) or "1": format_scalar(c) for e, c in self.items()}

    def to_json(self) -> list:
        return [
            {"exponents": named, "coef": format_scalar(c)}
            for named, c in sorted(self.named_items(), key=lambda nc: sorted(nc[0].items()))
        ]


def ts_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal of a polar-free series with nonzero constant term."""
    c0 = s.constant_term()
    if not c0 or s.has_polar():
        raise SeriesDomainError("reciprocal needs a nonzero constant term and no poles")
    w = s.scale(1 / c0) - 1
    out = TruncatedSeries.constant(1, s.variables, s.cap)
    power = out
    for _ in range(s.cap):
        power = power * (-w)
        if power.is_zero():
            break
        out = out + power
    return out.scale(1 / c0)


def ts_arith(a: TruncatedSeries, b, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def ts_exp(s: TruncatedSeries) -> TruncatedSeries:
    if s.has_polar() or s.constant_term():
        raise SeriesDomainError("exp needs a series without constant term or poles")
    out = TruncatedSeries.constant(1, s.variables, s.cap)
    power = out
    for k in range(1, s.cap + 1):
        power = power * s
        if power.is_zero():
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def ts_log(s: TruncatedSeries) -> TruncatedSeries:
    if s.has_polar() or s.constant_term() != 1:
        raise SeriesDomainError("log needs constant term 1 and no poles")
    u = s - 1
    out = TruncatedSeries.zero(s.variables, s.cap)
    power = TruncatedSeries.constant(1, s.variables, s.cap)
    for k in range(1, s.cap + 1):
        power = power * u
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def ts_scale_var(s: TruncatedSeries, var: str, a) -> TruncatedSeries:
    """Substitute ``var -> a*var``."""
    if var not in s.variables:
        raise SeriesDomainError(f"{var} is not a variable of {s.variables}")
    a = Fraction(a)
    i = s.variables.index(var)
    if not a:
        if any(e[i] < 0 for e in s._terms):
            raise SeriesDomainError("cannot scale a polar variable by zero")
        return TruncatedSeries(s.variables, {e: c for e, c in s._terms.items() if e[i] == 0}, s.cap)
    return TruncatedSeries(s.variables, {e: c * a ** e[i] for e, c in s._terms.items()}, s.cap)


def ts_derivative(s: TruncatedSeries, var: str) -> TruncatedSeries:
    if var not in s.variables:
        raise SeriesDomainError(f"{var} is not a variable of {s.variables}")
    i = s.variables.index(var)
    out = {}
    for e, c in s._terms.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = c * e[i]
    return TruncatedSeries(s.variables, out, s.cap - 1)


def ts_polar_split(s: TruncatedSeries, var: str) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Split into terms with negative ``var`` exponent and the rest."""
    if var not in s.variables:
        raise SeriesDomainError(f"{var} is not a variable of {s.variables}")
    i = s.variables.index(var)
    polar = {e: c for e, c in s._terms.items() if e[i] < 0}
    regular = {e: c for e, c in s._terms.items() if e[i] >= 0}
    return (TruncatedSeries(s.variables, polar, s.cap), TruncatedSeries(s.variables, regular, s.cap))


_SWAPS = {
    "dumbbell": ("x", "y"),
    "chain": ("z1", "z2"),
}


def _infer_shape(variables) -> str:
    vs = set(variables)
    if vs & {"z1", "z2"} and vs <= {"z1", "x", "z2"}:
        return "chain"
    if "y" in vs and vs <= {"x", "y"}:
        return "dumbbell"
    raise SeriesDomainError(f"no outer swap for variables {sorted(vs)}")


def ts_symmetrize(s: TruncatedSeries, shape: str | None = None) -> TruncatedSeries:
    """Average over the outer swap: ``x <-> y`` for dumb-bells, ``z1 <-> z2`` for chains."""
    shape = shape or _infer_shape(s.variables)
    if shape not in _SWAPS:
        raise SeriesDomainError(f"unknown diagram shape {shape!r}")
    u, v = _SWAPS[shape]
    full = s.extend((u, v))
    if set(full.variables) - ({"x", "y"} if shape == "dumbbell" else {"z1", "x", "z2"}):
        raise SeriesDomainError(f"variables {full.variables} do not fit a {shape}")
    i, j = full.variables.index(u), full.variables.index(v)
    out: dict = {}
    for e, c in full._terms.items():
        out[e] = out.get(e, 0) + c / 2
        f = list(e)
        f[i], f[j] = f[j], f[i]
        f = tuple(f)
        out[f] = out.get(f, 0) + c / 2
    return TruncatedSeries(full.variables, out, full.cap)


def exp_series(var: str, a, cap: int) -> TruncatedSeries:
    """``exp(a*var)`` up to degree ``cap``."""
    a = Fraction(a)
    return TruncatedSeries((var,), {(k,): a ** k / factorial(k) for k in range(cap + 1)}, cap)


def _unit_of_tn_minus_one(n: int, var: str, cap: int) -> TruncatedSeries:
    """``(exp(n*var) - 1)/(n*var) = sum (n*var)**k/(k+1)!``."""
    return TruncatedSeries((var,), {(k,): Fraction(n) ** k / factorial(k + 1) for k in range(cap + 1)}, cap)


def hair_expand(rf: FactoredRationalFn, var: str = "x", N: int = 8) -> TruncatedSeries:
    """Laurent expansion of ``rf(exp(var))`` at ``var = 0`` up to total degree ``N``.

    Each ``t**n - 1`` becomes ``n*var*u_n(var)`` with ``u_n`` a unit, so a
    denominator of total multiplicity ``M`` contributes ``var**-M`` times the
    exact inverse of a unit series.
    """
    if N < 1:
        raise SeriesDomainError("hair expansion needs N >= 1")
    M = rf.polar_order
    work = N + M
    reg = TruncatedSeries.zero((var,), work)
    num = rf.num.shift(rf.monomial_exp)
    for (e,), c in num.items():
        reg = reg + exp_series(var, e, work).scale(c)
    reg = reg.scale(rf.scalar)
    for n, m in rf.den_factors:
        inv = ts_inverse(_unit_of_tn_minus_one(n, var, work)).scale(Fraction(1, n))
        for _ in range(m):
            reg = reg * inv
    out = {(e - M,): c for (e,), c in reg.items()}
    return TruncatedSeries((var,), out, N)


def divided_difference(u: TruncatedSeries, a: str, b: str) -> TruncatedSeries:
    """``(u(a) - u(b)) / (a - b)`` for a univariate polar-free ``u``.

    ``x**n`` maps to ``sum_{i+j=n-1} a**i b**j``; the cap drops by one.
    """
    if len(u.variables) != 1:
        raise SeriesDomainError("divided differences need a univariate series")
    if u.has_polar():
        raise SeriesDomainError("divided differences need a polar-free series")
    out: dict = {}
    for (n,), c in u._terms.items():
        for i in range(n):
            key = (i, n - 1 - i)
            out[key] = out.get(key, 0) + c
    return TruncatedSeries((a, b), out, u.cap - 1)
