from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from strategies import polynomials

from reesblow.errors import ContextMismatch, PolySyntaxError, UnknownVariable, ZeroCharacteristicDivision
from reesblow.polyring import (
    DEGREE_OF_ZERO,
    GREVLEX,
    LEX,
    QQ,
    Field,
    MonomialOrder,
    NonHomogeneous,
    Polynomial,
    RingContext,
    parse_list,
    poly_arith,
    weighted_degree,
)

RING = RingContext.make(["x", "y", "v", "u"], [0, 0, 1, -1])
XYZ = RingContext.make(["x", "y", "z"], [1, 1, 1])


def P(text, ctx=RING):
    return ctx.parse(text)


def test_parse_two_term_weighted():
    p = P("x^2*y - 3/2*v*u")
    assert len(p.terms) == 2
    assert str(p) == "x^2*y - 3/2*v*u"
    assert p.weighted_degree() == 0


def test_parse_binomial_expansion():
    assert str(P("(x+y)^2")) == "x^2 + 2*x*y + y^2"


@pytest.mark.parametrize("bad", ["x +", "x**2", "(x", "x^", "2 3", "x^y", ""])
def test_syntax_errors(bad):
    with pytest.raises(PolySyntaxError) as info:
        P(bad)
    assert isinstance(info.value, SyntaxError)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        P("x + w")


def test_fp_denominator_divisible_by_p():
    ctx = RingContext.make(["x"], field=Field(5))
    assert ctx.parse("x/2") == ctx.parse("3*x")
    with pytest.raises(ZeroCharacteristicDivision):
        ctx.parse("x/5")
    with pytest.raises(ZeroCharacteristicDivision):
        ctx.parse("1/10")


def test_t_inverse_alias():
    assert P("v*t^-1") == P("v*u")
    assert P("t^-2") == P("u^2")


def test_fractions_reduced_and_positive_denominators():
    p = P("4/6*x + 6/4*y")
    coeffs = set(p.terms.values())
    assert coeffs == {Fraction(2, 3), Fraction(3, 2)}
    assert str(p) == "2/3*x + 3/2*y"


def test_fp_residues_in_range():
    ctx = RingContext.make(["x"], field=Field(7))
    p = ctx.parse("-x + 10")
    assert all(0 <= c < 7 for c in p.terms.values())
    assert str(p) == "6*x + 3"


@pytest.mark.parametrize(
    "op,a,b,expected",
    [
        ("mul", "x+y", "x-y", "x^2 - y^2"),
        ("add", "x*y + 1", "0", "x*y + 1"),
        ("mul", "v*u", "v*u", "v^2*u^2"),
        ("sub", "x", "x", "0"),
    ],
)
def test_poly_arith(op, a, b, expected):
    assert poly_arith(op, P(a), P(b)) == P(expected)


def test_pow_and_context_mismatch():
    assert poly_arith("pow", P("x+1"), 3) == P("x^3 + 3*x^2 + 3*x + 1")
    other = RingContext.make(["x", "y"])
    with pytest.raises(ContextMismatch):
        P("x") + other.parse("x")
    with pytest.raises(ValueError):
        P("x") ** -1


def test_weighted_degree_examples():
    assert weighted_degree(P("x^2*y")) == 0
    assert weighted_degree(P("v^2*u")) == 1
    nh = weighted_degree(P("x + v"))
    assert isinstance(nh, NonHomogeneous) and not nh
    assert set(nh.degrees) == {0, 1}
    assert weighted_degree(RING.zero()) is DEGREE_OF_ZERO


def test_orders():
    lexr = RING.with_order(LEX)
    assert str(lexr.parse("y^3 + x")) == "x + y^3"
    assert str(RING.with_order(GREVLEX).parse("y^3 + x")) == "y^3 + x"
    blk = RING.with_order(MonomialOrder.block(["u"]))
    assert str(blk.parse("x^5 + u")) == "u + x^5"


def test_field_parse_and_primality():
    assert Field.parse("QQ") == QQ
    assert Field.parse("Fp:13").characteristic == 13
    with pytest.raises(ValueError):
        Field(12)
    with pytest.raises(ValueError):
        Field.parse("ZZ")


def test_parse_list():
    gens = parse_list("[x^2, (x + y)*(x - y), v*u - x]", RING)
    assert [str(g) for g in gens] == ["x^2", "x^2 - y^2", "v*u - x"]
    assert parse_list("[]", RING) == []


def test_evaluate_and_restrict():
    A = RingContext.make(["x", "y"])
    p = P("v*u - x")
    img = p.evaluate({"v": A.parse("x"), "u": A.one()}, A)
    assert img == A.zero()


# --- properties ----------------------------------------------------------------

def polys(ctx, coeff=st.integers(-5, 5)):
    return polynomials(ctx, max_degree=4, max_terms=4, coeff=coeff)


@settings(max_examples=150, deadline=None)
@given(polys(XYZ), polys(XYZ), polys(XYZ))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == XYZ.zero()


@settings(max_examples=150, deadline=None)
@given(polys(XYZ, coeff=st.fractions(max_denominator=7)))
def test_print_parse_round_trip(p):
    assert XYZ.parse(str(p)) == p
    assert str(XYZ.parse(str(p))) == str(p)


@settings(max_examples=100, deadline=None)
@given(polys(RingContext.make(["x", "y", "z"], field=Field(11))))
def test_print_parse_round_trip_fp(p):
    assert p.ctx.parse(str(p)) == p


def homogeneous(ctx, degree):
    return polys(ctx).map(lambda p: Polynomial(ctx, {e: c for e, c in p.terms.items() if sum(e) == degree}))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 3).flatmap(lambda d: homogeneous(XYZ, d)),
       st.integers(0, 3).flatmap(lambda d: homogeneous(XYZ, d)))
def test_weighted_degree_additive(p, q):
    if p and q:
        assert weighted_degree(p * q) == weighted_degree(p) + weighted_degree(q)
