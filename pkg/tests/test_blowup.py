import pytest

from reesblow.blowup import (
    DeformationFamily,
    blow_up,
    deformation_fiber,
    exceptional_divisor,
    is_empty_atlas,
    nonneg_part,
    proj_atlas,
)
from reesblow.errors import NotDegreeOne, NotNGraded
from reesblow.graded import GradedAlgebra, transitions_compose_to_identity
from reesblow.idealcore import Ideal, regular_sequence_test
from reesblow.polyring import RingContext
from reesblow.rees import ImmersionData, cone, rees_extended


def poly_ring(names, weights=None):
    return GradedAlgebra.polynomial_ring(RingContext.make(names, weights), "A")


def data(A, *f):
    return ImmersionData(A, tuple(A.parse(g) for g in f))


def same_ideal(chart_a, chart_b) -> bool:
    """Equal chart ideals, after moving both into the larger chart ring."""
    big = chart_a.ring.ctx if chart_a.ring.ctx.nvars >= chart_b.ring.ctx.nvars else chart_b.ring.ctx
    a = Ideal(big, [g.to_context(big) for g in chart_a.ring.ideal.gens])
    b = Ideal(big, [g.to_context(big) for g in chart_b.ring.ideal.gens])
    return a.equals(b)


# --- nonneg part and atlases -----------------------------------------------------------

def test_nonneg_examples(plane, origin):
    N = nonneg_part(rees_extended(origin))
    assert N.ctx.names == ("x", "y", "v1", "v2") and N.generators() == ["y*v1 - x*v2"]
    assert N.meta["generated_in_degree_one"]
    N0 = nonneg_part(rees_extended(data(plane, "0")))
    assert N0.ctx.names == ("x", "y", "v") and N0.generators() == []
    Ne = nonneg_part(rees_extended(ImmersionData(plane, ())))
    assert Ne.ctx.names == ("x", "y") and Ne.positive_variables() == []


def test_projective_line_atlas():
    atlas = proj_atlas(poly_ring(["v1", "v2"], [1, 1]))
    assert [c.ring.ctx.names for c in atlas.charts] == [("w",), ("w",)]
    assert all(c.ideal_strings() == [] for c in atlas.charts)
    assert str(atlas.transitions[(0, 1)]["w"]) == "w^-1"
    assert transitions_compose_to_identity(atlas)
    assert not is_empty_atlas(atlas)


def test_atlas_degenerate_cases(plane):
    empty = proj_atlas(plane)
    assert empty.charts == [] and is_empty_atlas(empty)
    single = proj_atlas(poly_ring(["x", "y", "v"], [0, 0, 1]))
    assert len(single.charts) == 1
    assert single.charts[0].ring.ctx.names == ("x", "y") and single.charts[0].ideal_strings() == []


def test_atlas_errors():
    with pytest.raises(NotNGraded):
        proj_atlas(poly_ring(["v", "u"], [1, -1]))
    B = poly_ring(["v", "w"], [1, 2])
    with pytest.raises(NotDegreeOne):
        proj_atlas(B, ["w"])


def test_atlas_all_charts_zero():
    ctx = RingContext.make(["v1", "v2"], [1, 1])
    B = GradedAlgebra(ctx, [ctx.parse("v1"), ctx.parse("v2")])
    atlas = proj_atlas(B)
    assert all(c.is_zero for c in atlas.charts) and is_empty_atlas(atlas)


# --- blow-ups -----------------------------------------------------------------------

def test_origin_blow_up(origin):
    atlas = blow_up(origin)
    assert [c.ideal_strings() for c in atlas.charts] == [["y - x*w"], ["y*w - x"]]
    assert [str(c.exceptional) for c in atlas.charts] == ["x", "y"]
    assert atlas.reports["transitions_identity"] and atlas.reports["generated_in_degree_one"]


@pytest.mark.parametrize("f", ["1", "0"])
def test_blow_up_is_base_for_unit_and_zero(plane, f):
    atlas = blow_up(data(plane, f))
    assert len(atlas.charts) == 1 and not is_empty_atlas(atlas)
    chart = atlas.charts[0]
    assert chart.ring.ctx.names == ("x", "y") and chart.ideal_strings() == []


def test_blow_up_of_identity_quotient_is_empty(plane):
    assert is_empty_atlas(blow_up(ImmersionData(plane, ())))


REGULAR = [
    (["x", "y"], ("x", "y")),
    (["x", "y", "z"], ("x", "y*(1 - x)", "z*(1 - x)")),
    (["x", "y"], ("x^2", "y")),
    (["x", "y", "z"], ("x", "y")),
]


@pytest.mark.parametrize("names,f", REGULAR)
def test_regular_sequence_blow_up_is_classical(names, f):
    d = data(poly_ring(names), *f)
    assert regular_sequence_test(list(d.f), d.base.ideal)[0]
    plain, classical = blow_up(d), blow_up(d, regularized=True)
    assert len(plain.charts) == len(classical.charts)
    for a, b in zip(plain.charts, classical.charts):
        assert a.ring.ctx.names == b.ring.ctx.names and same_ideal(a, b)


@pytest.mark.parametrize("names,f", REGULAR + [(["x", "y"], ("x^2", "x*y"))])
def test_blow_up_commutes_with_adjoining_a_variable(names, f):
    small = blow_up(data(poly_ring(names), *f))
    big = blow_up(data(poly_ring(names + ["z0"]), *f))
    assert len(small.charts) == len(big.charts)
    for a, b in zip(small.charts, big.charts):
        extra = set(b.ring.ctx.names) - set(a.ring.ctx.names)
        assert extra == {"z0"}
        assert same_ideal(a, b)


# --- exceptional divisor -----------------------------------------------------------

def test_exceptional_divisor_of_origin(origin):
    E = exceptional_divisor(origin)
    assert E.chart_agreement == [True, True]
    assert E.kappa_ok and all(E.kappa_surjective[d] for d in range(5))
    bl = blow_up(origin)
    for e_chart, b_chart in zip(E.atlas.charts, bl.charts):
        # E-chart = Bl-chart / (principal generator)
        cut = Ideal(b_chart.ring.ctx, b_chart.ring.ideal.gens + (b_chart.exceptional,))
        assert cut.equals(Ideal(cut.ctx, [g.to_context(cut.ctx) for g in e_chart.ring.ideal.gens]))
        # what remains is the affine line in w
        assert sorted(e_chart.ideal_strings()) == ["x", "y"] and "w" in e_chart.ring.ctx.names


def test_exceptional_divisor_of_unit_is_empty(plane):
    assert cone(rees_extended(data(plane, "1"))).is_zero_ring
    assert is_empty_atlas(exceptional_divisor(data(plane, "1")).atlas)


# --- deformation to the normal cone -------------------------------------------------

def test_deformation_fibers(origin):
    R = rees_extended(origin)
    fam = DeformationFamily(R)
    for c in (1, 2):
        F = fam.fiber(c)
        assert F.isomorphism.ok and not F.is_cone
    special = fam.special_fiber()
    assert special.is_cone and special.algebra.same_presentation(cone(R))
    assert fam.general_fiber().isomorphism.ok


@pytest.mark.parametrize("c", [1, 2, -3, "1/2"])
def test_nonzero_fibers_are_the_base(dual_numbers, c):
    F = deformation_fiber(rees_extended(dual_numbers), c)
    assert F.isomorphism.ok


def test_two_nonzero_fibers_are_isomorphic(origin):
    R = rees_extended(origin)
    F1, F2 = deformation_fiber(R, 1), deformation_fiber(R, 2)
    assert F1.algebra.generators() == ["x - v1", "y - v2"]
    assert F2.algebra.generators() == ["x - 2*v1", "y - 2*v2"]
    # v_i -> v_i / 2 carries one presentation onto the other
    ctx = F1.algebra.ctx
    images = {"x": ctx.var("x"), "y": ctx.var("y"), "v1": ctx.parse("v1/2"), "v2": ctx.parse("v2/2")}
    moved = Ideal(ctx, [g.evaluate(images, ctx) for g in F2.algebra.ideal.gens])
    assert moved.equals(F1.algebra.ideal)
