import pytest
from hypothesis import given, settings, strategies as st

from reesblow.blowup import blow_up
from reesblow.errors import NegativeWeights, NonHomogeneousError, NotDegreeOne, UnboundedPiece
from reesblow.graded import (
    GradedAlgebra,
    chart_transition,
    drop_vanishing_variables,
    generated_in_degree_one,
    graded_piece_basis,
    hilbert_function,
    homogeneous_localization_chart,
    split_degree_zero,
    split_dimension_check,
    transitions_compose_to_identity,
    twist_cocycle,
    twist_cocycle_condition,
    twist_multiplicative,
    verify_localization_chart,
    veronese,
    veronese_hilbert_check,
)
from reesblow.polyring import RingContext
from reesblow.rees import ImmersionData, cone, rees_extended


def algebra(names, weights, *rels):
    ctx = RingContext.make(names, weights)
    return GradedAlgebra(ctx, [ctx.parse(r) for r in rels])


PLANE_REES = algebra(["x", "y", "v1", "v2"], [0, 0, 1, 1], "y*v1 - x*v2")


# --- pieces ---------------------------------------------------------------------

def test_piece_examples():
    B = algebra(["v1", "v2"], [1, 1], "v1*v2")
    assert graded_piece_basis(B, 2).strings() == ["v1^2", "v2^2"]
    assert graded_piece_basis(B, 1, shift=1).strings() == graded_piece_basis(B, 2).strings()
    L = algebra(["v", "u"], [1, -1], "v*u")
    assert graded_piece_basis(L, 1, 2).strings() == ["v"]
    with pytest.raises(UnboundedPiece):
        graded_piece_basis(L, 1)


def test_homogeneity_enforced():
    with pytest.raises(NonHomogeneousError):
        algebra(["x", "v"], [0, 1], "x + v")
    zero = algebra(["v"], [1], "1")
    assert zero.is_zero_ring


def test_drop_vanishing_variables():
    B = algebra(["x", "v"], [0, 1], "x")
    D = drop_vanishing_variables(B)
    assert D.ctx.names == ("v",)
    assert [h for _, h in hilbert_function(D, range(4))] == [1, 1, 1, 1]


# --- degree-zero split ------------------------------------------------------------

def test_split_examples():
    s = split_degree_zero(algebra(["x", "v"], [0, 1]))
    assert s.B0.ctx.names == ("x",) and s.B0.generators() == []
    assert s.Bplus.strings() == ["v"]
    assert split_degree_zero(algebra(["x", "y"], [0, 0])).Bplus.strings() == []
    with pytest.raises(NegativeWeights):
        split_degree_zero(algebra(["v", "u"], [1, -1]))


def test_split_dimensions_add_up():
    for B in (PLANE_REES, algebra(["x", "v"], [0, 1], "x^2*v"), algebra(["x", "v", "w"], [0, 1, 2], "x*w - v^2")):
        rows = split_dimension_check(B, 6)
        assert all(r.ok for r in rows), rows


# --- charts ---------------------------------------------------------------------

def test_chart_of_rees_plane():
    ch = homogeneous_localization_chart(PLANE_REES, "v1")
    assert ch.ideal_strings() == ["y - x*w"]
    assert ch.substitution_strings() == {"v1": "1", "v2": "w"}
    assert ch.ring.ctx.names == ("x", "y", "w")
    assert verify_localization_chart(PLANE_REES, ch).ok


def test_chart_at_a_sum_uses_a_fresh_generator():
    ch = homogeneous_localization_chart(PLANE_REES, PLANE_REES.parse("v1 + v2"))
    assert ch.substitution_strings()["h"] == "1"
    assert verify_localization_chart(ch.source, ch).ok


def test_chart_of_a_line_is_the_point():
    ch = homogeneous_localization_chart(algebra(["v"], [1]), "v")
    assert ch.ring.ctx.names == () and ch.ideal_strings() == []


def test_chart_needs_degree_one():
    B = algebra(["x", "v", "w"], [0, 1, 2])
    with pytest.raises(NotDegreeOne):
        homogeneous_localization_chart(B, "w")
    with pytest.raises(NotDegreeOne):
        homogeneous_localization_chart(B, B.parse("v^2"))


# --- transitions and twists -------------------------------------------------------

@pytest.fixture
def origin_atlas(origin):
    return blow_up(origin)


def test_transitions_are_inverse(origin_atlas):
    assert transitions_compose_to_identity(origin_atlas)
    assert str(chart_transition(origin_atlas, 0, 1)["w"]) == "w^-1"


def test_twist_examples(origin_atlas):
    t1 = twist_cocycle(origin_atlas, 1)
    assert str(t1[(0, 1)].cocycle) == "w"
    assert all(e.cocycle.is_one() for e in twist_cocycle(origin_atlas, 0).values())
    tm = twist_cocycle(origin_atlas, -1)
    assert all((t1[k].cocycle * tm[k].cocycle).is_one() for k in t1)
    t2 = twist_cocycle(origin_atlas, 2)
    assert all(t1[k].cocycle * t1[k].cocycle == t2[k].cocycle for k in t1)


@settings(max_examples=30, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_twist_properties(n, m):
    ctx = RingContext.make(["x", "y"])
    atlas = blow_up(ImmersionData(GradedAlgebra.polynomial_ring(ctx), ctx.gens()))
    assert twist_multiplicative(atlas, n, m)
    assert twist_cocycle_condition(atlas, n)


# --- Veronese and generation ----------------------------------------------------------

def test_veronese_examples():
    V = veronese(algebra(["x"], [1]), 2)
    assert V.ctx.names == ("w",) and V.meta["images"] == {"w": "x^2"} and V.generators() == []
    V = veronese(algebra(["v"], [2]), 2)
    assert V.meta["images"] == {"w": "v"} and generated_in_degree_one(V)
    V = veronese(algebra(["a", "b"], [1, 1]), 2)
    assert V.meta["images"] == {"w1": "a^2", "w2": "a*b", "w3": "b^2"}
    assert V.generators() == ["w2^2 - w1*w3"]
    with pytest.raises(NegativeWeights):
        veronese(algebra(["v", "u"], [1, -1]), 2)


@pytest.mark.parametrize("delta", [1, 2, 3])
def test_veronese_hilbert_identity(delta):
    # holds whenever B is generated in degree 1
    conic = algebra(["v1", "v2", "v3"], [1, 1, 1], "v1^2 - v2*v3")
    for B in (algebra(["v1", "v2"], [1, 1]), algebra(["a", "b"], [1, 1], "a^2*b"), conic):
        for d, dv, db in veronese_hilbert_check(B, delta, 4):
            assert dv == db, (B, delta, d)


def test_veronese_of_ring_not_generated_in_degree_one():
    # b has degree 2, so B_3 = <a^3, a*b> cannot reach b^3 in B_6
    B = algebra(["a", "b"], [1, 2], "a^2*b")
    assert not generated_in_degree_one(B)
    rows = {d: (dv, db) for d, dv, db in veronese_hilbert_check(B, 3, 2)}
    assert rows[2] == (1, 2)


def test_generated_in_degree_one_examples(origin):
    assert generated_in_degree_one(algebra(["v1", "v2"], [1, 1]))
    report = generated_in_degree_one(algebra(["w"], [2]))
    assert not report and report.failures[2] == ["w"]
    assert generated_in_degree_one(PLANE_REES)
    with pytest.raises(NegativeWeights):
        generated_in_degree_one(rees_extended(origin).algebra)


def test_cone_pieces_of_origin(origin):
    C = drop_vanishing_variables(cone(rees_extended(origin)))
    assert [h for _, h in hilbert_function(C, range(9))] == [d + 1 for d in range(9)]
