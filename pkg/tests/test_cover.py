import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_kontsevich.cover import (
    THETA3_IS_CONJECTURAL,
    CoverParams,
    lift_edge,
    lift_part,
    lmo_theta2,
    lmo_theta2_formula,
    lmo_theta3,
)
from torus_kontsevich.diagrams import RationalColoring
from torus_kontsevich.errors import LiftDomainError, ParameterError
from torus_kontsevich.exact import FactoredRationalFn, LaurentPoly
from torus_kontsevich.pipeline import TorusParams, z2_rational, z3_rational
from torus_kontsevich.wheels import HyperbolicForm

F = Fraction


def F1(n):
    return HyperbolicForm("F1", n).to_rational()


def F2(n):
    return HyperbolicForm("F2", n).to_rational()


def evaluate(rf, t):
    num = sum(complex(c) * t ** e for (e,), c in rf.numerator_poly().items())
    den = 1
    for n, m in rf.den_factors:
        den *= (t ** n - 1) ** m
    return num / den


def root_average(rf, r, t):
    """Keeping the exponents divisible by r is averaging over r-th roots of unity."""
    return sum(evaluate(rf, cmath.exp(2j * cmath.pi * k / r) * t) for k in range(r)) / r


SAMPLE = 1.21 + 0.37j


def close_to_lift(rf, r):
    return abs(evaluate(lift_edge(rf, r), SAMPLE ** r) - root_average(rf, r, SAMPLE)) < 1e-9


@pytest.mark.parametrize("n,r", [(1, 2), (1, 3), (2, 3), (3, 2), (2, 5), (6, 5), (6, 7), (5, 3), (7, 2)])
def test_edge_laws(n, r):
    assert lift_edge(F1(n), r) == F1(n)
    assert lift_edge(F2(n), r) == F2(n) * r
    assert close_to_lift(F1(n), r) and close_to_lift(F2(n), r)


def test_lift_polynomial_keeps_divisible_exponents():
    poly = FactoredRationalFn.from_poly(LaurentPoly.from_coeffs({-3: 1, 1: 2, 3: 5, 6: -1}))
    assert lift_edge(poly, 3).to_laurent() == LaurentPoly.from_coeffs({-1: 1, 1: 5, 2: -1})


def test_lift_identity():
    assert lift_edge(F2(4), 1) == F2(4)


def test_lift_domain_errors():
    with pytest.raises(LiftDomainError):
        lift_edge(F1(2), 2)
    with pytest.raises(LiftDomainError):
        lift_edge(F2(6), 3)
    with pytest.raises(ParameterError):
        lift_edge(F1(1), 0)
    with pytest.raises(ParameterError):
        lift_part(RationalColoring(("x",), [(1, (F1(1),))]), 2)


def rational_fns(r_coprime):
    nums = st.dictionaries(st.integers(-3, 4), st.integers(-3, 3).filter(bool), min_size=1, max_size=3)
    ns = st.sampled_from([n for n in range(1, 8) if all(n % d for d in r_coprime)])
    dens = st.lists(st.tuples(ns, st.integers(1, 2)), max_size=2)
    return st.builds(lambda a, d: FactoredRationalFn(1, 0, LaurentPoly.from_coeffs(a), d), nums, dens)


@settings(max_examples=40, deadline=None)
@given(rational_fns((2, 3)))
def test_lift_composition(rf):
    assert lift_edge(lift_edge(rf, 2), 3) == lift_edge(rf, 6)
    assert lift_edge(lift_edge(rf, 3), 2) == lift_edge(rf, 6)


@settings(max_examples=40, deadline=None)
@given(rational_fns((5,)), st.sampled_from([2, 3, 5]))
def test_lift_matches_root_average(rf, r):
    if any(n % r == 0 for n, _ in rf.den_factors):
        with pytest.raises(LiftDomainError):
            lift_edge(rf, r)
        return
    assert close_to_lift(rf, r)


@pytest.mark.parametrize("p,q,r", [(2, 3, 5), (2, 5, 3), (3, 5, 2), (2, 3, 7)])
def test_lift_scaling(p, q, r):
    params = TorusParams(p, q, 2)
    z2, z3 = z2_rational(params), z3_rational(params)
    assert lift_part(z2, r) == z2.scale(r)
    assert lift_part(z3, r) == z3.scale(r * r)


def test_cover_params_validation():
    with pytest.raises(ParameterError):
        CoverParams(2, 3, 0)
    with pytest.raises(ParameterError):
        CoverParams(2, 3, 4)
    with pytest.raises(ParameterError):
        CoverParams(2, 3, 9)
    with pytest.raises(ParameterError):
        CoverParams(2, 4, 5)


@pytest.mark.parametrize(
    "p,q,r,t2,t3",
    [(2, 3, 5, F(1, 2), F(-5, 4)), (2, 3, 7, F(1), F(-7, 2)), (1, 3, 2, F(0), F(0))],
)
def test_lmo_values(p, q, r, t2, t3):
    cover = CoverParams(p, q, r)
    assert lmo_theta2(cover) == t2
    assert lmo_theta2_formula(p, q, r) == t2
    assert lmo_theta3(cover) == t3


def test_theta3_flagged():
    assert THETA3_IS_CONJECTURAL
