"""Loop-graded invariants as colorings of wheels, dumb-bells and chains.

Conventions:

* a wheel part is a series in ``x``;
* a dumb-bell ``x^n y^m`` is stored symmetrized, ``x^n y^m = x^m y^n``;
* a chain ``z1^a x^n z2^b`` has the middle wheel in ``x`` and is stored
  symmetrized under ``z1 <-> z2``;
* a bracket ``[g, h]`` (two wheels glued at two points) is kept symbolic.

:class:`RationalColoring` holds the rational forms: sums of products of
factored rational functions, one factor per wheel variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import StructureError
from .exact import FactoredRationalFn, format_scalar
from .series import TruncatedSeries, hair_expand, ts_scale_var, ts_symmetrize

__all__ = [
    "WheelPart",
    "DumbbellPart",
    "ChainPart",
    "BracketTerm",
    "ClosedPart",
    "LoopGradedInvariant",
    "RationalColoring",
    "canonicalize",
    "canonical_brackets",
    "loop_degree",
    "parity_violations",
]

CHAIN_VARS = ("z1", "x", "z2")
DUMBBELL_VARS = ("x", "y")


def _zero(variables, cap):
    return TruncatedSeries.zero(variables, cap)


@dataclass(frozen=True)
class WheelPart:
    series: TruncatedSeries

    def canonical(self) -> "WheelPart":
        return self


@dataclass(frozen=True)
class DumbbellPart:
    series: TruncatedSeries

    def canonical(self) -> "DumbbellPart":
        return DumbbellPart(ts_symmetrize(self.series.extend(DUMBBELL_VARS), "dumbbell"))


@dataclass(frozen=True)
class ChainPart:
    series: TruncatedSeries

    def canonical(self) -> "ChainPart":
        return ChainPart(ts_symmetrize(self.series.extend(CHAIN_VARS), "chain"))

    def __add__(self, other: "ChainPart") -> "ChainPart":
        return ChainPart(self.series + other.series)

    def __neg__(self):
        return ChainPart(-self.series)


def _lead(s: TruncatedSeries):
    items = s.items()
    return (min(sum(e) for e, _ in items), tuple(items)) if items else (0, ())


def _leading_coeff(s: TruncatedSeries) -> Fraction:
    d = s.valuation()
    return min((e, c) for e, c in s.items() if sum(e) == d)[1]


@dataclass(frozen=True)
class BracketTerm:
    """``coef * [g(x), h(x)]``, symmetric in ``g`` and ``h``."""

    coef: Fraction
    g: TruncatedSeries
    h: TruncatedSeries

    def canonical(self) -> "BracketTerm":
        """Scale ``g`` and ``h`` to leading coefficient 1 and order them."""
        if not self.coef or self.g.is_zero() or self.h.is_zero():
            return BracketTerm(Fraction(0), _zero(("x",), self.g.cap), _zero(("x",), self.h.cap))
        cg, ch = _leading_coeff(self.g), _leading_coeff(self.h)
        g, h = self.g.scale(1 / cg), self.h.scale(1 / ch)
        if _lead(g) > _lead(h):
            g, h = h, g
        return BracketTerm(Fraction(self.coef) * cg * ch, g, h)

    def is_zero(self) -> bool:
        return not self.coef or self.g.is_zero() or self.h.is_zero()

    def key(self):
        c = self.canonical()
        return (_lead(c.g), _lead(c.h))


def canonical_brackets(terms: Iterable[BracketTerm]) -> tuple[BracketTerm, ...]:
    """Merge bracket terms with the same (normalized) arguments, drop zeros, sort.

    All arguments are truncated to the smallest cap present first.
    """
    terms = [b for b in terms if not b.is_zero()]
    if not terms:
        return ()
    cap = min(min(b.g.cap, b.h.cap) for b in terms)
    merged: dict = {}
    for b in terms:
        c = BracketTerm(b.coef, b.g.truncate(cap), b.h.truncate(cap)).canonical()
        k = (_lead(c.g), _lead(c.h))
        if k in merged:
            merged[k] = replace(merged[k], coef=merged[k].coef + c.coef)
        else:
            merged[k] = c
    return tuple(merged[k] for k in sorted(merged) if merged[k].coef)


@dataclass(frozen=True)
class ClosedPart:
    """Coefficients of the closed diagrams Theta_2 and Theta_3."""

    theta2: Fraction = Fraction(0)
    theta3: Fraction = Fraction(0)


@dataclass(frozen=True)
class LoopGradedInvariant:
    strut: Fraction
    z1: WheelPart
    z2: DumbbellPart
    z3_chain: ChainPart
    z3_brackets: tuple = ()
    closed: ClosedPart = field(default_factory=ClosedPart)

    def canonical(self) -> "LoopGradedInvariant":
        return canonicalize(self)

    def __eq__(self, other):
        if not isinstance(other, LoopGradedInvariant):
            return NotImplemented
        a, b = canonicalize(self), canonicalize(other)
        if len(a.z3_brackets) != len(b.z3_brackets):
            return False
        return (
            a.strut == b.strut
            and a.z1.series == b.z1.series
            and a.z2.series == b.z2.series
            and a.z3_chain.series == b.z3_chain.series
            and all(
                x.coef == y.coef and x.g == y.g and x.h == y.h
                for x, y in zip(a.z3_brackets, b.z3_brackets)
            )
            and a.closed == b.closed
        )

    __hash__ = None


def canonicalize(inv: LoopGradedInvariant) -> LoopGradedInvariant:
    """Symmetrize dumb-bell and chain parts and merge/order the brackets."""
    return LoopGradedInvariant(
        strut=Fraction(inv.strut),
        z1=inv.z1.canonical(),
        z2=inv.z2.canonical(),
        z3_chain=inv.z3_chain.canonical(),
        z3_brackets=canonical_brackets(inv.z3_brackets),
        closed=inv.closed,
    )


_DEGREES = {WheelPart: 1, DumbbellPart: 2, ChainPart: 3, BracketTerm: 3, ClosedPart: 2}


def loop_degree(part) -> int:
    """Loop degree of a part; closed parts report the degree of ``Theta_2``."""
    for cls, d in _DEGREES.items():
        if isinstance(part, cls):
            return d
    raise StructureError(f"{type(part).__name__} is not a diagram part")


def parity_violations(inv: LoopGradedInvariant) -> list[str]:
    """Monomials breaking the leg-parity rules of wheels, dumb-bells and chains."""
    bad = []
    for named, c in inv.z1.series.named_items():
        e = named.get("x", 0)
        if e % 2 or e == 0:
            bad.append(f"z1 has x^{e}")
    for named, c in inv.z2.series.named_items():
        if named.get("x", 0) % 2 == 0 or named.get("y", 0) % 2 == 0:
            bad.append(f"z2 has {named}")
    for named, c in inv.z3_chain.series.named_items():
        if named.get("z1", 0) % 2 == 0 or named.get("z2", 0) % 2 == 0 or named.get("x", 0) % 2:
            bad.append(f"z3 chain has {named}")
    return bad


class RationalColoring:
    """``sum coef * prod_i rf_i(exp(edge_i))`` with one factor per wheel variable.

    Terms are normalized on construction: every factor has scalar 1 (its
    scalar moves into ``coef``) and equal factor tuples are merged, so equal
    combinations built the same way compare equal.
    """

    __slots__ = ("edges", "terms")

    def __init__(self, edges: Sequence[str], terms: Iterable = ()):
        self.edges = tuple(edges)
        merged: dict = {}
        for coef, factors in terms:
            factors = tuple(factors)
            if len(factors) != len(self.edges):
                raise StructureError(f"{len(factors)} factors for edges {self.edges}")
            coef = Fraction(coef)
            units = []
            for rf in factors:
                c, unit = rf.monic()
                coef *= c
                units.append(unit)
            if not coef:
                continue
            key = tuple(units)
            merged[key] = merged.get(key, 0) + coef
        self.terms = tuple(
            (c, k) for k, c in sorted(merged.items(), key=lambda kc: [f.sort_key() for f in kc[0]]) if c
        )

    def __add__(self, other: "RationalColoring") -> "RationalColoring":
        if self.edges != other.edges:
            raise StructureError("edge mismatch")
        return RationalColoring(self.edges, self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "RationalColoring":
        a = Fraction(a)
        return RationalColoring(self.edges, [(a * c, f) for c, f in self.terms])

    def __eq__(self, other):
        if not isinstance(other, RationalColoring):
            return NotImplemented
        return self.edges == other.edges and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def swapped(self, i: int, j: int) -> "RationalColoring":
        def sw(f):
            f = list(f)
            f[i], f[j] = f[j], f[i]
            return tuple(f)

        return RationalColoring(self.edges, [(c, sw(f)) for c, f in self.terms])

    def symmetrized(self) -> "RationalColoring":
        """Average over the outer swap (first and last edge)."""
        return (self + self.swapped(0, len(self.edges) - 1)).scale(Fraction(1, 2))

    def denominators(self) -> set[int]:
        return {n for _, fs in self.terms for f in fs for n, _ in f.den_factors}

    def hair(self, N: int) -> TruncatedSeries:
        """Series obtained by substituting ``t_i = exp(edge_i)``, exact to degree ``N``."""
        out = _zero(self.edges, N)
        for coef, factors in self.terms:
            total_polar = sum(f.polar_order for f in factors)
            work = N + total_polar
            prod = None
            for var, rf in zip(self.edges, factors):
                s = hair_expand(rf, var, work)
                prod = s if prod is None else prod * s
            out = out + prod.scale(coef).truncate(N)
        return out.truncate(N)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for c, fs in self.terms:
            body = " * ".join(f"[{f}]({v})" for f, v in zip(fs, self.edges))
            out.append(f"{format_scalar(c)} * {body}")
        return "\n".join(out)

    def __repr__(self):
        return f"RationalColoring({self.edges}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {
            "edges": list(self.edges),
            "terms": [
                {"coef": format_scalar(c), "factors": [f.to_json() for f in fs]} for c, fs in self.terms
            ],
        }


def scale_invariant_legs(inv: LoopGradedInvariant, a) -> LoopGradedInvariant:
    """Multiply every diagram by ``a`` per leg (``x -> a x`` in every variable)."""
    a = Fraction(a)

    def sc(s: TruncatedSeries) -> TruncatedSeries:
        for v in s.variables:
            s = ts_scale_var(s, v, a)
        return s

    brackets = tuple(
        # [x^n, x^m] has n + m - 4 legs once the two contact points are used
        BracketTerm(b.coef * a ** -4, sc(b.g), sc(b.h))
        for b in inv.z3_brackets
    )
    return LoopGradedInvariant(
        strut=inv.strut * a * a,
        z1=WheelPart(sc(inv.z1.series)),
        z2=DumbbellPart(sc(inv.z2.series)),
        z3_chain=ChainPart(sc(inv.z3_chain.series)),
        z3_brackets=brackets,
        closed=inv.closed,
    )
