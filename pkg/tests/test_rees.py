import pytest
from hypothesis import given, settings, strategies as st

from reesblow.errors import IllFormedPayload
from reesblow.graded import GradedAlgebra, graded_piece_basis
from reesblow.idealcore import Ideal, regular_sequence_test
from reesblow.polyring import RingContext
from reesblow.rees import (
    BaseChange,
    GradedMap,
    ImmersionData,
    TargetChange,
    compare_to_classical,
    cone,
    cone_degree_zero_is_base,
    nonpositive_shape,
    rees_extended,
    rees_naturality,
    regularize,
    t_regularity,
)


def base(names, *rels, name="A"):
    ctx = RingContext.make(names)
    return GradedAlgebra(ctx, [ctx.parse(r) for r in rels], name)


def data(A, *f):
    return ImmersionData(A, tuple(A.parse(g) for g in f))


# --- construction ------------------------------------------------------------------

def test_rees_examples(plane, origin):
    R = rees_extended(origin)
    assert R.ctx.names == ("x", "y", "v1", "v2", "u")
    assert R.ctx.weights == (0, 0, 1, 1, -1)
    assert R.ideal.strings() == ["v1*u - x", "v2*u - y"]
    empty = rees_extended(ImmersionData(plane, ()))
    assert empty.ctx.names == ("x", "y", "u") and empty.ideal.strings() == []
    assert rees_extended(data(plane, "0")).ideal.strings() == ["v*u"]


def test_f_reduced_modulo_base(dual_numbers):
    d = data(dual_numbers.base, "e^3 + e")
    assert [str(g) for g in d.f] == ["e"]


def test_fresh_names_avoid_base_variables():
    A = base(["u", "v"])
    R = rees_extended(data(A, "u"))
    assert (R.v_names, R.u_name) == (("v1",), "u1")
    assert R.ideal.strings() == ["v1*u1 - u"]


# --- cone ---------------------------------------------------------------------

def test_cone_examples(plane, origin):
    C = cone(rees_extended(origin))
    assert C.ctx.names == ("x", "y", "v1", "v2") and C.generators() == ["x", "y"]
    assert C.is_n_graded
    C0 = cone(rees_extended(ImmersionData(plane, ())))
    assert C0.ctx.names == ("x", "y") and C0.generators() == []


def test_cone_of_regularized_dual_numbers(dual_numbers):
    from reesblow.idealcore import ideal_power
    reg = regularize(rees_extended(dual_numbers)).rees
    C = cone(reg)
    assert sorted(C.generators()) == ["e", "v^2"]
    # associated graded of (e) in k[e]/(e^2): (e)/(e^2) in degree 1, 0 above
    I = dual_numbers.ideal
    for n in range(1, 4):
        quotient_dim = len(graded_piece_basis(C, n, 0).basis)
        J = dual_numbers.base.ideal.gens
        In = Ideal(I.ctx, ideal_power(I, n).gens + J)
        In1 = Ideal(I.ctx, ideal_power(I, n + 1).gens + J)
        expected = 0 if In.equals(In1) else 1
        assert quotient_dim == expected


@pytest.mark.parametrize("f", [("x", "y"), ("x^2", "y"), ("x*y",), ()])
def test_cone_degree_zero_is_base_mod_f(plane, f):
    assert cone_degree_zero_is_base(rees_extended(data(plane, *f)))


# --- regularization and t-regularity ---------------------------------------------

def test_dual_numbers_regularization(dual_numbers):
    R = rees_extended(dual_numbers)
    reg = regularize(R)
    assert reg.algebra.ideal.equals(Ideal(R.ctx, [R.ctx.parse(g) for g in ("e^2", "v*u - e", "v*e", "v^2")]))
    assert sorted(reg.kernel.strings()) == ["e*v", "v^2"]
    tr = t_regularity(R)
    assert not tr.regular and tr.obstruction.contains(R.ctx.parse("v*e"))


def test_regularize_idempotent_and_regular(dual_numbers, origin):
    for R in (rees_extended(dual_numbers), rees_extended(origin)):
        once = regularize(R)
        twice = regularize(once.algebra)
        assert twice.algebra.same_presentation(once.algebra)
        assert twice.kernel.is_zero() and twice.stabilized_at == 0
        assert t_regularity(once.algebra).regular


def test_regularize_to_zero_ring():
    ctx = RingContext.make(["u"], [-1])
    reg = regularize(GradedAlgebra(ctx, [ctx.parse("u^2")]))
    assert reg.is_zero_ring
    assert reg.stabilized_at == 2


def test_t_regularity_examples(plane, origin):
    tr = t_regularity(rees_extended(origin))
    assert tr.regular and tr.obstruction.is_zero()
    assert t_regularity(rees_extended(ImmersionData(plane, ()))).regular


# --- classical comparison -----------------------------------------------------------

def test_compare_origin(origin):
    cmp = compare_to_classical(rees_extended(origin), 4)
    assert cmp.match and cmp.unregularized.agrees
    assert cmp.powers[2] == ["x^2", "x*y", "y^2"]


def test_compare_dual_numbers(dual_numbers):
    cmp = compare_to_classical(rees_extended(dual_numbers), 5)
    assert cmp.match and not cmp.t_regular and not cmp.unregularized.agrees


def test_compare_empty_sequence(plane):
    assert compare_to_classical(rees_extended(ImmersionData(plane, ())), 3).match


FIXTURES = [
    (["x", "y"], (), ("x", "y")),
    (["x", "y"], (), ("x^2", "x*y")),
    (["x", "y", "z"], (), ("x", "y*(1 - x)", "z*(1 - x)")),
    (["x", "y", "z"], (), ("y*(1 - x)", "z*(1 - x)", "x")),
    (["e"], ("e^2",), ("e",)),
    (["x", "y"], ("x*y",), ("x",)),
    (["x"], (), ("0",)),
    (["x", "y", "z"], ("x*y - z^2", "x^2", "x*y", "x*z", "z^2"), ("y",)),
]


@pytest.mark.parametrize("names,rels,f", FIXTURES)
def test_t_regular_iff_unregularized_agrees(names, rels, f):
    R = rees_extended(data(base(names, *rels), *f))
    cmp = compare_to_classical(R, 3)
    assert cmp.match
    assert t_regularity(R).regular == cmp.unregularized.agrees


@pytest.mark.parametrize("names,rels,f", [fx for fx in FIXTURES if not fx[1]])
def test_regular_sequence_gives_t_regular(names, rels, f):
    d = data(base(names), *f)
    if regular_sequence_test(list(d.f), d.base.ideal)[0]:
        assert t_regularity(rees_extended(d)).regular


@pytest.mark.parametrize("names,rels,f", FIXTURES)
def test_nonpositive_shape(names, rels, f):
    shape = nonpositive_shape(rees_extended(data(base(names, *rels), *f)), 4, 4)
    assert shape == {m: True for m in range(5)}


# --- naturality ---------------------------------------------------------------------

def test_base_change_to_polynomial_extension(origin):
    target = base(["x", "y", "z"])
    gmap, report = rees_naturality("base_change", BaseChange(origin, target, {}))
    assert report.ok and report.verbatim
    assert gmap.image_strings() == {n: n for n in ("x", "y", "v1", "v2", "u")}


def test_base_change_to_a_quotient(origin):
    target = base(["x", "y"], "x*y")
    _, report = rees_naturality("base_change", BaseChange(origin, target, {}))
    assert report.ok and report.two_sided


def test_base_change_rejects_non_ring_map(dual_numbers):
    target = base(["e"])
    with pytest.raises(IllFormedPayload):
        rees_naturality("base_change", BaseChange(dual_numbers, target, {"e": target.parse("1")}))


def test_target_functoriality(plane):
    gmap, report = rees_naturality("target", TargetChange(plane, (plane.parse("x"),), (plane.parse("y"),)))
    assert report.ok and all(report.surjective[d] for d in range(5))
    assert gmap.image_strings()["v1"] == "0" and gmap.image_strings()["v2"] == "v"


# --- adjunction at pi_0 --------------------------------------------------------------

def adjunction_sides(d, Q, u, images):
    """Both sides of the bijection for one explicit assignment.

    Left: the A[u]-algebra map R -> Q given on v_i by ``images`` is graded and
    well defined.  Right: A -> (Q/u)_0 kills every f_i, so A/(f) -> (Q/u)_0 exists.
    """
    R = rees_extended(d)
    imgs = {n: Q.ctx.var(n) for n in d.base.ctx.names}
    imgs[R.u_name] = Q.ctx.var(u)
    for v, img in zip(R.v_names, images):
        p = Q.parse(img)
        assert not p or p.weighted_degree() == 1
        imgs[v] = p
    left = GradedMap(R.algebra, Q, imgs).well_defined()
    mod_u = Ideal(Q.ctx, Q.ideal.gens + (Q.ctx.var(u),))
    right = all(mod_u.contains(f.to_context(Q.ctx)) for f in d.f)
    return left, right


def test_adjunction_identity(origin):
    Q = rees_extended(origin).algebra
    assert adjunction_sides(origin, Q, "u", ["v1", "v2"]) == (True, True)


def test_adjunction_laurent(origin):
    ctx = RingContext.make(["x", "y", "t", "u"], [0, 0, 1, -1])
    Q = GradedAlgebra(ctx, [ctx.parse("t*u - 1")])
    assert adjunction_sides(origin, Q, "u", ["x*t", "y*t"]) == (True, True)
    # u is regular on Q, so the assignment is the only one: a second lift differs by u-torsion
    assert t_regularity(Q).regular


def test_adjunction_through_a_quotient(origin):
    ctx = RingContext.make(["x", "y", "w", "u"], [0, 0, 1, -1])
    Q = GradedAlgebra(ctx, [ctx.parse("x"), ctx.parse("w*u - y")])
    assert adjunction_sides(origin, Q, "u", ["0", "w"]) == (True, True)


def test_adjunction_negative(plane):
    d = data(plane, "x")
    ctx = RingContext.make(["x", "y", "u"], [0, 0, -1])
    Q = GradedAlgebra(ctx, [])
    # Q_1 = 0, so the only candidate for v is 0, and x is not 0 in Q/u
    assert len(graded_piece_basis(Q, 1, 3).basis) == 0
    assert adjunction_sides(d, Q, "u", ["0"]) == (False, False)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(["x", "y", "x*y", "x^2", "x + y", "0", "1"]), min_size=1, max_size=2))
def test_adjunction_sides_agree_on_own_rees(f):
    # the unit R -> R, v_i -> v_i, always exists; its partner kills f in (R/u)_0
    ctx = RingContext.make(["x", "y"])
    d = data(GradedAlgebra.polynomial_ring(ctx), *f)
    R = rees_extended(d)
    assert adjunction_sides(d, R.algebra, R.u_name, list(R.v_names)) == (True, True)
