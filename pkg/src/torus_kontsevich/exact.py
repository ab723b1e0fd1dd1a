"""Exact scalars, Laurent polynomials and factored rational functions in ``t``.

Scalars are :class:`fractions.Fraction` throughout.  Laurent polynomials may
have several named variables; factored rational functions are univariate in
``t`` and keep their denominator as a multiset of ``(t**n - 1)`` factors,
which is the shape both the hair expansion and the covering lift consume.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import DivisionError, ParameterError

ExactScalar = Fraction

__all__ = [
    "ExactScalar",
    "LaurentPoly",
    "FactoredRationalFn",
    "lp_arith",
    "cyclotomic_multiplier",
    "alexander_torus",
    "format_scalar",
    "format_monomial",
]


def format_scalar(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(variables: tuple[str, ...], exps: tuple[int, ...]) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 0:
            continue
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


def _format_terms(variables, items) -> str:
    """Render ``(exps, coef)`` pairs as ``"t^-1 - 1 + t"``."""
    out = []
    for exps, c in items:
        mono = format_monomial(variables, exps)
        mag = abs(c)
        if not mono:
            body = format_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_scalar(mag)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out) if out else "0"


class LaurentPoly:
    """Finitely supported map from integer exponent vectors to rationals."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Iterable[str] = ("t",), terms: Mapping | None = None):
        self.variables = tuple(variables)
        clean = {}
        k = len(self.variables)
        for exps, c in (terms or {}).items():
            if isinstance(exps, int):
                exps = (exps,)
            exps = tuple(int(e) for e in exps)
            if len(exps) != k:
                raise ValueError(f"exponent {exps} does not match variables {self.variables}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, c, variables=("t",)) -> "LaurentPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def monomial(cls, exp, c=1, variables=("t",)) -> "LaurentPoly":
        if isinstance(exp, int):
            exp = (exp,)
        return cls(variables, {tuple(exp): c})

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, object], var: str = "t") -> "LaurentPoly":
        """Univariate constructor from ``{exponent: coefficient}``."""
        return cls((var,), {(e,): c for e, c in coeffs.items()})

    @classmethod
    def t_power_minus_one(cls, n: int, var: str = "t") -> "LaurentPoly":
        return cls.from_coeffs({n: 1, 0: -1}, var)

    # accessors

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exp) -> Fraction:
        if isinstance(exp, int):
            exp = (exp,)
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def min_exp(self, i: int = 0) -> int:
        return min(e[i] for e in self._terms)

    def max_exp(self, i: int = 0) -> int:
        return max(e[i] for e in self._terms)

    def coefficient_sum(self) -> Fraction:
        """Value at 1 in every variable."""
        return sum(self._terms.values(), Fraction(0))

    # arithmetic

    def _check(self, other: "LaurentPoly"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return LaurentPoly.constant(other, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            return LaurentPoly(self.variables, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exp``."""
        if isinstance(exp, int):
            exp = (exp,)
        return LaurentPoly(
            self.variables,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / other`` in the Laurent ring; raises if it is not exact.

        Lex-leading terms are cancelled one at a time.  Each quotient exponent
        is confined to the box forced by the per-variable degree ranges, so a
        non-divisible input is detected instead of looping.
        """
        self._check(other)
        if other.is_zero():
            raise DivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.variables)
        k = len(self.variables)
        lo = [self.min_exp(i) - other.min_exp(i) for i in range(k)]
        hi = [self.max_exp(i) - other.max_exp(i) for i in range(k)]
        if any(a > b for a, b in zip(lo, hi)):
            raise DivisionError(f"{other} does not divide {self}")
        lead_e, lead_c = max(other._terms.items())
        rem = dict(self._terms)
        quot: dict = {}
        while rem:
            e, c = max(rem.items())
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(q < l or q > h for q, l, h in zip(qe, lo, hi)):
                raise DivisionError(f"{other} does not divide {self}")
            qc = c / lead_c
            quot[qe] = qc
            for oe, oc in other._terms.items():
                te = tuple(a + b for a, b in zip(qe, oe))
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return LaurentPoly(self.variables, quot)

    def divides(self, other: "LaurentPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        try:
            other.exact_div(self)
        except DivisionError:
            return False
        return True

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Univariate ``t -> t**k``."""
        return LaurentPoly(self.variables, {(e[0] * k,): c for e, c in self._terms.items()})

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly((var,), {e: c for e, c in self._terms.items()})

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self._terms == other._terms
        try:
            return self == LaurentPoly.constant(other, self.variables)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return _format_terms(self.variables, self.items())

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self) -> list:
        return [
            {"exponents": {v: e for v, e in zip(self.variables, exps) if e}, "coef": format_scalar(c)}
            for exps, c in self.items()
        ]


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Add, multiply or exactly divide two Laurent polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown op {op!r}")


def cyclotomic_multiplier(n: int, r: int, var: str = "t") -> LaurentPoly:
    """``1 + t**n + ... + t**(n*(r-1))``, so that ``(t**n - 1)`` times it is ``t**(n*r) - 1``."""
    if n < 1 or r < 1:
        raise ParameterError(f"need n, r >= 1, got n={n}, r={r}")
    return LaurentPoly.from_coeffs({n * k: 1 for k in range(r)}, var)


def _merge_factors(factors) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for n, m in factors:
        n, m = int(n), int(m)
        if n < 1 or m < 0:
            raise ValueError(f"bad denominator factor ({n}, {m})")
        if m:
            acc[n] = acc.get(n, 0) + m
    return tuple(sorted(acc.items()))


class FactoredRationalFn:
    """``scalar * t**monomial_exp * num(t) / prod (t**n - 1)**mult``.

    The constructor normalizes: whole ``(t**n - 1)`` factors dividing the
    numerator are cancelled, the numerator is shifted to start at ``t**0`` and
    scaled to leading coefficient 1.  Two values in this normal form with the
    same factor multiset compare equal structurally; :meth:`same_value`
    compares by cross multiplication.
    """

    __slots__ = ("scalar", "monomial_exp", "num", "den_factors")

    def __init__(self, scalar=1, monomial_exp: int = 0, num: LaurentPoly | None = None,
                 den_factors=()):
        scalar = Fraction(scalar)
        num = LaurentPoly.constant(1) if num is None else num
        if num.variables != ("t",):
            num = num.rename("t")
        den = dict(_merge_factors(den_factors))
        if not scalar or num.is_zero():
            self.scalar, self.monomial_exp = Fraction(0), 0
            self.num, self.den_factors = LaurentPoly.constant(1), ()
            return
        for n in sorted(den):
            d = LaurentPoly.t_power_minus_one(n)
            while den[n]:
                try:
                    num = num.exact_div(d)
                except DivisionError:
                    break
                den[n] -= 1
        low = num.min_exp()
        monomial_exp += low
        num = num.shift(-low)
        lead = num.coeff(num.max_exp())
        self.scalar = scalar * lead
        self.monomial_exp = int(monomial_exp)
        self.num = num * (1 / lead)
        self.den_factors = _merge_factors(den.items())

    @classmethod
    def from_poly(cls, poly: LaurentPoly) -> "FactoredRationalFn":
        return cls(1, 0, poly)

    def is_zero(self) -> bool:
        return not self.scalar

    def is_polynomial(self) -> bool:
        return not self.den_factors

    @property
    def polar_order(self) -> int:
        """Total multiplicity of the denominator, i.e. the pole order at ``t = 1``."""
        return sum(m for _, m in self.den_factors)

    def numerator_poly(self) -> LaurentPoly:
        """``scalar * t**monomial_exp * num`` as one Laurent polynomial."""
        return self.num.shift(self.monomial_exp) * self.scalar

    def denominator_poly(self) -> LaurentPoly:
        out = LaurentPoly.constant(1)
        for n, m in self.den_factors:
            out = out * LaurentPoly.t_power_minus_one(n) ** m
        return out

    def to_laurent(self) -> LaurentPoly:
        if self.den_factors:
            raise DivisionError(f"{self} is not a Laurent polynomial")
        return self.numerator_poly()

    def with_scalar(self, scalar) -> "FactoredRationalFn":
        return FactoredRationalFn(scalar, self.monomial_exp, self.num, self.den_factors)

    def monic(self) -> tuple[Fraction, "FactoredRationalFn"]:
        """Split off the scalar: ``self == c * unit`` with ``unit.scalar == 1``."""
        return self.scalar, self.with_scalar(1)

    def __mul__(self, other):
        if isinstance(other, FactoredRationalFn):
            return FactoredRationalFn(
                self.scalar * other.scalar,
                self.monomial_exp + other.monomial_exp,
                self.num * other.num,
                self.den_factors + other.den_factors,
            )
        return self.with_scalar(self.scalar * Fraction(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def same_value(self, other: "FactoredRationalFn") -> bool:
        return self.numerator_poly() * other.denominator_poly() == (
            other.numerator_poly() * self.denominator_poly()
        )

    def _key(self):
        return (self.scalar, self.monomial_exp, self.num, self.den_factors)

    def __eq__(self, other):
        if not isinstance(other, FactoredRationalFn):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def sort_key(self):
        return (self.den_factors, self.monomial_exp, tuple(self.num.items()))

    def __str__(self):
        head = "" if self.scalar == 1 else f"{format_scalar(self.scalar)}*"
        num = self.num.shift(self.monomial_exp)
        body = f"({num})" if len(num) > 1 else str(num)
        if not self.den_factors:
            return f"{head}{body}"
        den = "*".join(
            f"(t^{n} - 1)" + (f"^{m}" if m > 1 else "") if n > 1 else "(t - 1)" + (f"^{m}" if m > 1 else "")
            for n, m in self.den_factors
        )
        return f"{head}{body}/({den})" if len(self.den_factors) > 1 else f"{head}{body}/{den}"

    def __repr__(self):
        return f"FactoredRationalFn({self})"

    def to_json(self) -> dict:
        return {
            "scalar": format_scalar(self.scalar),
            "monomial_exp": self.monomial_exp,
            "num": self.num.to_json(),
            "den_factors": [[n, m] for n, m in self.den_factors],
        }


def alexander_torus(p: int, q: int) -> FactoredRationalFn:
    """Alexander polynomial of the ``(p, q)`` torus knot, symmetric normalization.

    ``t**(-(p-1)(|q|-1)/2) (t**(p|q|) - 1)(t - 1) / ((t**p - 1)(t**|q| - 1))``;
    the mirror ``(p, -q)`` has the same polynomial.
    """
    if p < 1 or q == 0:
        raise ParameterError(f"need p >= 1 and q != 0, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ParameterError(f"p and q must be coprime, got ({p}, {q})")
    aq = abs(q)
    twice_shift = (p - 1) * (aq - 1)
    assert twice_shift % 2 == 0, "coprime p, q cannot both be even"
    num = LaurentPoly.t_power_minus_one(p * aq) * LaurentPoly.t_power_minus_one(1)
    return FactoredRationalFn(1, -twice_shift // 2, num, [(p, 1), (aq, 1)])
