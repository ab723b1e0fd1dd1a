from fractions import Fraction

import pytest

from torus_kontsevich.diagrams import parity_violations
from torus_kontsevich.errors import ParameterError
from torus_kontsevich.exact import LaurentPoly
from torus_kontsevich.pipeline import (
    TorusParams,
    cancellation_chain,
    closed_theta2_formula,
    closed_theta2_z3,
    fractional_residual,
    rescale_legs,
    star_formula,
    step1_exponent,
    unwheel_assemble,
    verify_closed_normalization,
    z1_rational,
    z1_rational_series,
    z2_rational,
    z3_lines_series,
    z3_rational,
    zprime3_series,
)
from torus_kontsevich.series import ts_polar_split
from torus_kontsevich.wheels import f_at, f_series

F = Fraction
PAIRS = [(2, 3), (2, 5), (3, 4), (3, 5)]


def test_params_validation():
    for p, q, N in [(0, 3, 8), (2, 4, 8), (2, 0, 8), (2, 3, 1)]:
        with pytest.raises(ParameterError):
            TorusParams(p, q, N)
    assert TorusParams(2, 3).swapped() == TorusParams(3, 2)


def test_step1_trefoil():
    inv = step1_exponent(TorusParams(2, 3, 6))
    assert inv.strut == F(3, 4)
    assert inv.z1.series.coeff((2,)) == F(1, 48) * (1 + F(9, 4))
    # 4/9 [f(3x/2), f(x)], stored with both arguments scaled to leading coefficient 1
    (b,) = inv.z3_brackets
    assert b.coef == F(4, 9) * F(9, 4 * 48) * F(1, 48)


def test_step1_strut_general():
    for p, q in [(3, 5), (4, 7), (1, 2)]:
        assert step1_exponent(TorusParams(p, q, 4)).strut == F(q, 2 * p)


def test_rescale_legs():
    params = TorusParams(2, 3, 6)
    out = rescale_legs(step1_exponent(params), 2)
    assert out.strut == 3
    assert out.z1.series == f_at(2, "x", 6) + f_at(3, "x", 6)
    step = step1_exponent(params)
    assert rescale_legs(step, 1) == step


def test_unwheel_strut_zero():
    assert unwheel_assemble(TorusParams(3, 5, 4)).strut == 0


@pytest.mark.parametrize("p,q", PAIRS)
def test_assembly_equals_star(p, q):
    params = TorusParams(p, q, 8)
    assert unwheel_assemble(params) == star_formula(params)


def test_star_trefoil_values():
    inv = star_formula(TorusParams(2, 3, 6))
    assert inv.z1.series.coeff((2,)) == F(-23, 48)
    assert inv.z2.series.coeff((1, 1)) == F(1, 12) * F(1, 8) + F(23, 24) * F(1, 4)
    assert inv.z2.series.coeff((1, 1)) == F(1, 4)
    assert inv.closed.theta2 == F(1, 48)


@pytest.mark.parametrize("q", [2, 5, 7])
def test_unknot(q):
    params = TorusParams(1, q, 8)
    inv = star_formula(params)
    assert inv.strut == 0
    assert inv.z1.series == f_series(8)
    assert inv.z2.series.is_zero()
    assert inv.z3_chain.series.is_zero()
    assert inv.z3_brackets == ()
    assert inv.closed.theta2 == 0
    assert z1_rational(params).to_laurent() == LaurentPoly.constant(1)
    assert z2_rational(params).is_zero()
    assert z3_rational(params).is_zero()
    assert fractional_residual(params).series.is_zero()


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (2, 5)])
def test_symmetry(p, q):
    assert star_formula(TorusParams(p, q, 8)) == star_formula(TorusParams(q, p, 8))


@pytest.mark.parametrize("p,q", PAIRS)
def test_one_loop_rational(p, q):
    params = TorusParams(p, q, 12)
    assert star_formula(params).z1.series - f_series(12) == z1_rational_series(params)


@pytest.mark.parametrize("p,q", PAIRS)
def test_two_loop_rational(p, q):
    params = TorusParams(p, q, 10)
    hair = z2_rational(params).hair(10)
    assert hair == star_formula(params).z2.series
    assert ts_polar_split(hair, "x")[0].is_zero()


def test_two_loop_leading_term():
    z2 = z2_rational(TorusParams(2, 3, 4))
    assert z2.hair(2).coeff((1, 1)) == F(1, 4)
    lead = [c for c, fs in z2.terms if all(f.den_factors == ((6, 1),) for f in fs)]
    assert lead == [F(2 * 6, 32)]


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5)])
def test_residual_is_zprime3(p, q):
    params = TorusParams(p, q, 8)
    res = fractional_residual(params).series
    assert res == zprime3_series(params)
    assert min(e.get("x", 0) for e, _ in res.named_items()) == -2


@pytest.mark.parametrize("p,q", [(2, 3), (3, 5)])
def test_cancellation(p, q):
    params = TorusParams(p, q, 8)
    assert cancellation_chain(params).series == -fractional_residual(params).series


def test_rational_chain_round_trip():
    params = TorusParams(2, 3, 8)
    assert z3_rational(params).hair(8) == z3_lines_series(params) - fractional_residual(params).series


@pytest.mark.parametrize("p,q", PAIRS)
def test_rational_denominators(p, q):
    assert z3_rational(TorusParams(p, q, 4)).denominators() <= {p, q, p * q}
    assert z2_rational(TorusParams(p, q, 4)).denominators() <= {p, q, p * q}


@pytest.mark.parametrize("p,q,value", [(2, 3, F(1, 48)), (1, 4, F(0)), (3, 5, F(1, 6)), (2, 5, F(1, 16))])
def test_closed_theta2(p, q, value):
    assert closed_theta2_formula(p, q) == value
    assert closed_theta2_z3(TorusParams(p, q, 4)) == value


@pytest.mark.parametrize("p,q", [(2, 3), (1, 3), (3, 4), (5, 7)])
def test_closed_normalization(p, q):
    assert verify_closed_normalization(TorusParams(p, q, 4))


@pytest.mark.parametrize("p,q", [(2, 3), (3, 5)])
def test_parity(p, q):
    assert parity_violations(star_formula(TorusParams(p, q, 8))) == []


def test_negative_q_mirror():
    pos, neg = star_formula(TorusParams(2, 3, 8)), star_formula(TorusParams(2, -3, 8))
    assert neg.z1.series == pos.z1.series
    assert neg.z2.series == -pos.z2.series
    assert neg.z3_chain.series == pos.z3_chain.series
    assert unwheel_assemble(TorusParams(2, -3, 8)) == neg
    assert fractional_residual(TorusParams(2, -3, 8)).series == zprime3_series(TorusParams(2, -3, 8))
