from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torus_kontsevich.diagrams import (
    BracketTerm,
    ChainPart,
    ClosedPart,
    DumbbellPart,
    LoopGradedInvariant,
    RationalColoring,
    WheelPart,
    canonical_brackets,
    canonicalize,
    loop_degree,
    parity_violations,
    scale_invariant_legs,
)
from torus_kontsevich.errors import StructureError
from torus_kontsevich.exact import FactoredRationalFn, LaurentPoly
from torus_kontsevich.series import TruncatedSeries

F = Fraction


def x(coeffs, cap=6):
    return TruncatedSeries.univariate(coeffs, "x", cap)


def chain(d, cap=6):
    return TruncatedSeries(("z1", "x", "z2"), d, cap)


def dumbbell(d, cap=6):
    return TruncatedSeries(("x", "y"), d, cap)


def invariant(**kw):
    base = dict(
        strut=F(3, 4),
        z1=WheelPart(x({2: F(-23, 48)})),
        z2=DumbbellPart(dumbbell({(1, 1): F(1, 4)})),
        z3_chain=ChainPart(chain({})),
    )
    base.update(kw)
    return LoopGradedInvariant(**base)


def test_loop_degrees():
    assert loop_degree(WheelPart(x({}))) == 1
    assert loop_degree(DumbbellPart(dumbbell({}))) == 2
    assert loop_degree(ChainPart(chain({}))) == 3
    assert loop_degree(BracketTerm(F(1), x({2: 1}), x({2: 1}))) == 3
    assert loop_degree(ClosedPart()) == 2
    with pytest.raises(StructureError):
        loop_degree(3)


def test_dumbbell_canonical_symmetrizes():
    d = DumbbellPart(dumbbell({(3, 1): 1})).canonical()
    assert d.series == dumbbell({(3, 1): F(1, 2), (1, 3): F(1, 2)})


def test_chain_canonical_swaps_outer_legs():
    c = ChainPart(chain({(1, 0, 3): 2})).canonical()
    assert c.series == chain({(1, 0, 3): 1, (3, 0, 1): 1})


def test_invariant_equality_is_up_to_symmetry():
    a = invariant(z2=DumbbellPart(dumbbell({(3, 1): 1})))
    b = invariant(z2=DumbbellPart(dumbbell({(1, 3): 1})))
    assert a == b
    assert a != invariant(z2=DumbbellPart(dumbbell({(1, 1): 1})))
    assert canonicalize(a).z2.series == canonicalize(b).z2.series


def test_invariant_equality_sees_closed_part():
    assert invariant() != invariant(closed=ClosedPart(F(1, 48)))


def test_bracket_canonical_normalizes_and_orders():
    b = BracketTerm(F(1), x({4: 3}), x({2: 2})).canonical()
    assert b.coef == 6
    assert b.g == x({2: 1}) and b.h == x({4: 1})


def test_bracket_symmetric():
    g, h = x({2: F(1, 48), 4: F(-1, 5760)}), x({2: F(1, 12)})
    assert canonical_brackets([BracketTerm(F(2), g, h)]) == canonical_brackets([BracketTerm(F(2), h, g)])


def test_canonical_brackets_merge_and_drop():
    g, h = x({2: 1}), x({2: 1, 4: 1})
    merged = canonical_brackets([BracketTerm(F(1), g, h), BracketTerm(F(1), h.scale(2), g)])
    assert len(merged) == 1 and merged[0].coef == 3
    assert canonical_brackets([BracketTerm(F(1), g, h), BracketTerm(F(-1), h, g)]) == ()
    assert canonical_brackets([BracketTerm(F(0), g, h)]) == ()


def test_canonical_brackets_common_cap():
    out = canonical_brackets([BracketTerm(F(1), x({2: 1, 6: 1}, cap=8), x({2: 1}, cap=4))])
    assert out[0].g.cap == 4 and out[0].g == x({2: 1}, cap=4)


def test_parity_clean_and_violations():
    assert parity_violations(invariant()) == []
    bad = invariant(
        z1=WheelPart(x({3: 1})),
        z2=DumbbellPart(dumbbell({(2, 1): 1})),
        z3_chain=ChainPart(chain({(1, 1, 1): 1})),
    )
    msgs = parity_violations(bad)
    assert len(msgs) == 3
    assert msgs[0] == "z1 has x^3"


def test_scale_legs():
    inv = invariant(z3_brackets=(BracketTerm(F(1), x({2: 1}), x({2: 1})),))
    out = scale_invariant_legs(inv, 2)
    assert out.strut == 3
    assert out.z1.series == x({2: F(-23, 12)})
    assert out.z2.series == dumbbell({(1, 1): 1})
    assert out.z3_brackets[0].coef == F(1, 16)
    assert out.z3_brackets[0].g == x({2: 4})


def T(e):
    return FactoredRationalFn(1, e)


def F1(n):
    return FactoredRationalFn(1, 0, LaurentPoly.from_coeffs({n: 1, 0: 1}), [(n, 1)])


def test_coloring_normalizes_scalars_and_merges():
    a = RationalColoring(("x", "y"), [(1, (F1(1).with_scalar(2), T(1))), (F(1, 2), (F1(1), T(1).with_scalar(2)))])
    assert a.terms == ((F(3), (F1(1), T(1))),)
    assert (a - a).is_zero()


def test_coloring_edge_count_checked():
    with pytest.raises(StructureError):
        RationalColoring(("x", "y"), [(1, (T(1),))])
    with pytest.raises(StructureError):
        RationalColoring(("x",), [(1, (T(1),))]) + RationalColoring(("y",), [(1, (T(1),))])


def test_coloring_hair_product():
    # t_x * t_y -> e^(x+y)
    got = RationalColoring(("x", "y"), [(2, (T(1), T(1)))]).hair(2)
    assert got == dumbbell({(0, 0): 2, (1, 0): 2, (0, 1): 2, (1, 1): 2, (2, 0): 1, (0, 2): 1}, cap=2)


def test_coloring_hair_polar_product():
    # F1(1)(x) F1(1)(y) = coth(x/2) coth(y/2): leading term 4/(x y)
    got = RationalColoring(("x", "y"), [(1, (F1(1), F1(1)))]).hair(0)
    assert got.coeff((-1, -1)) == 4 and got.coeff((1, -1)) == F(1, 3)


def test_coloring_symmetrized():
    c = RationalColoring(("z1", "x", "z2"), [(1, (T(1), T(0), F1(2)))])
    s = c.symmetrized()
    assert s == s.swapped(0, 2)
    assert s.hair(3) == ChainPart(c.hair(3)).canonical().series


def test_coloring_str_and_json():
    c = RationalColoring(("x",), [(F(-1, 2), (F1(2),))])
    assert str(c) == "-1/2 * [(1 + t^2)/(t^2 - 1)](x)"
    js = c.to_json()
    assert js["edges"] == ["x"] and js["terms"][0]["coef"] == "-1/2"


scalars = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))
monos = st.dictionaries(st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(1, 3)), scalars, max_size=4)


@settings(max_examples=40, deadline=None)
@given(monos)
def test_chain_canonical_idempotent(d):
    c = ChainPart(chain(d)).canonical()
    assert c.canonical().series == c.series


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(scalars, st.integers(1, 3), st.integers(1, 3)), max_size=4))
def test_canonical_brackets_order_independent(triples):
    terms = [BracketTerm(c, x({2 * a: 1}), x({2 * b: 1, 2 * b + 2: 1})) for c, a, b in triples]
    assert canonical_brackets(terms) == canonical_brackets(list(reversed(terms)))
