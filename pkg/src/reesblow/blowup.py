"""Proj atlases, blow-ups, exceptional divisors and deformation to the normal cone."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NotDegreeOne, NotNGraded
from .graded import (
    GradedAlgebra,
    ProjAtlas,
    _chart,
    _as_variable,
    _chart_names,
    _with_fresh_generator,
    chart_transition,
    generated_in_degree_one,
    transitions_compose_to_identity,
)
from .idealcore import Ideal, eliminate
from .polyring import Polynomial, RingContext
from .rees import (
    GradedMap,
    ImmersionData,
    ReesPresentation,
    cone,
    regularize,
    rees_extended,
)


def nonneg_part(R: ReesPresentation, bound: int = 6) -> GradedAlgebra:
    """R_{>=0} presented on the base and v variables: J_R ∩ k[x, v]."""
    J = eliminate(R.ideal, [R.u_name])
    report = generated_in_degree_one(GradedAlgebra(J.ctx, J), bound)
    name = f"{R.algebra.name}>=0" if R.algebra.name else None
    return GradedAlgebra(J.ctx, J, name, {"generated_in_degree_one": report, "v_names": R.v_names})


def _radical_cover_check(B: GradedAlgebra, gens: Sequence[str], bound: int) -> list[str]:
    """Positive-weight variables with no power <= bound in (gens) + J."""
    I = Ideal(B.ctx, B.ideal.gens + tuple(B.ctx.var(g) for g in gens))
    missing = []
    for v in B.positive_variables():
        x = B.ctx.var(v)
        if not any(I.contains(x ** k) for k in range(1, bound + 1)):
            missing.append(v)
    return missing


def proj_atlas(B: GradedAlgebra, generators: Sequence[Polynomial | str] | None = None,
               check_bound: int = 4) -> ProjAtlas:
    """One chart D+(f) per degree-1 generator f, with pairwise transitions."""
    if not B.is_n_graded:
        raise NotNGraded(f"{B!r} is not N-graded")
    if generators is None:
        generators = [n for n, w in B.ctx.variables if w == 1]
    names = []
    for g in generators:
        n = _as_variable(B, g)
        if n is None:
            B, n = _with_fresh_generator(B, g)
        elif B.ctx.weight(n) != 1:
            raise NotDegreeOne(f"{n} has weight {B.ctx.weight(n)}, not 1")
        names.append(n)
    missing = _radical_cover_check(B, names, check_bound)
    if missing:
        warnings.warn(f"generators {names} may not cover Proj: {missing} not in their radical up to power {check_bound}")
    charts = [_chart(B, n, _chart_names(B, n)) for n in names]
    atlas = ProjAtlas(B, names, charts)
    for i in range(len(charts)):
        for j in range(len(charts)):
            if i != j:
                atlas.transitions[(i, j)] = chart_transition(atlas, i, j)
    atlas.reports["transitions_identity"] = transitions_compose_to_identity(atlas)
    atlas.reports["uncovered"] = missing
    return atlas


def blow_up(data: ImmersionData, regularized: bool = False) -> ProjAtlas:
    """Bl_Z X = Proj R_{>=0}; chart j carries f_j as its exceptional generator.

    With ``regularized=True`` the u-saturated (classical) Rees algebra is used.
    """
    R = rees_extended(data)
    if regularized:
        R = regularize(R).rees
    B = nonneg_part(R)
    atlas = proj_atlas(B, list(R.v_names))
    for chart, fj in zip(atlas.charts, data.f):
        chart.exceptional = fj.to_context(chart.ring.ctx)
    atlas.reports["generated_in_degree_one"] = bool(B.meta["generated_in_degree_one"])
    atlas.reports["regularized"] = regularized
    return atlas


def is_empty_atlas(atlas: ProjAtlas) -> bool:
    return atlas.empty


@dataclass
class ExceptionalDivisor:
    atlas: ProjAtlas
    chart_agreement: list[bool]  # E-chart == Bl-chart / (exceptional generator)
    kappa_well_defined: bool
    kappa_surjective: dict[int, bool] = field(default_factory=dict)

    @property
    def kappa_ok(self) -> bool:
        return self.kappa_well_defined and all(self.kappa_surjective.values())


def exceptional_divisor(data: ImmersionData, bound: int = 4) -> ExceptionalDivisor:
    """E = Proj of the cone, compared chart-wise with the blow-up."""
    R = rees_extended(data)
    cone_alg = cone(R)
    E = proj_atlas(cone_alg, list(R.v_names))
    Bl = blow_up(data)
    agree = []
    for ce, cb in zip(E.charts, Bl.charts):
        ctx = ce.ring.ctx
        cut = Ideal(ctx, [g.to_context(ctx) for g in cb.ring.ideal.gens] + [cb.exceptional.to_context(ctx)])
        agree.append(cut.equals(ce.ring.ideal))
        ce.exceptional = cb.exceptional
    # kappa: R_{>=0} ⊗_A A/I -> cone, identity on variables
    B = nonneg_part(R)
    src = GradedAlgebra(B.ctx, Ideal(B.ctx, B.ideal.gens + tuple(fi.to_context(B.ctx) for fi in data.f)))
    images = {n: cone_alg.ctx.var(n) for n in B.ctx.names}
    kappa = GradedMap(src, cone_alg, images)
    surj = {d: kappa.surjective_in_degree(d, R.v_names, R.v_names) for d in range(bound + 1)}
    return ExceptionalDivisor(E, agree, kappa.well_defined(), surj)


@dataclass
class FiberIsomorphism:
    forward_well_defined: bool  # A -> fiber
    backward_well_defined: bool  # fiber -> A, v_i -> f_i / c
    round_trip_fiber: bool
    round_trip_base: bool

    @property
    def ok(self) -> bool:
        return all((self.forward_well_defined, self.backward_well_defined, self.round_trip_fiber, self.round_trip_base))


@dataclass
class DeformationFiber:
    algebra: GradedAlgebra
    c: object
    isomorphism: FiberIsomorphism | None = None  # only for c != 0
    is_cone: bool = False


def deformation_fiber(R: ReesPresentation, c) -> DeformationFiber:
    """Fiber of Spec R over u = c.

    c = 0 gives the cone; for c != 0 the fiber is checked isomorphic to A via
    v_i -> f_i / c.
    """
    fld = R.ctx.field
    c = fld(c)
    if c == 0:
        return DeformationFiber(cone(R), c, None, True)
    # over u = c the grading is lost; present the fiber with all weights 0
    ctx0 = RingContext(fld, tuple((n, 0) for n in R.ctx.names), R.ctx.order)
    gens = [Polynomial(ctx0, g.terms) for g in R.ideal.gens] + [ctx0.var(R.u_name) - c]
    J = eliminate(Ideal(ctx0, gens), [R.u_name])
    fiber = GradedAlgebra(J.ctx, J, f"{R.algebra.name}|u={c}" if R.algebra.name else None)
    A = R.data.base
    inv = fld.inv(c)
    phi = {n: fiber.ctx.var(n) for n in A.ctx.names}  # A -> fiber
    psi = {n: A.ctx.var(n) for n in A.ctx.names}  # fiber -> A
    for v, fi in zip(R.v_names, R.data.f):
        psi[v] = fi * inv
    fwd = all(fiber.ideal.contains(g.evaluate(phi, fiber.ctx)) for g in A.ideal.gens)
    bwd = all(A.ideal.contains(g.evaluate(psi, A.ctx)) for g in fiber.ideal.gens)
    rt_fiber = all(
        fiber.ideal.contains(fiber.ctx.var(n).evaluate(psi, A.ctx).evaluate(phi, fiber.ctx) - fiber.ctx.var(n))
        for n in fiber.ctx.names
    )
    rt_base = all(
        A.ideal.contains(A.ctx.var(n).evaluate(phi, fiber.ctx).evaluate(psi, A.ctx) - A.ctx.var(n))
        for n in A.ctx.names
    )
    return DeformationFiber(fiber, c, FiberIsomorphism(fwd, bwd, rt_fiber, rt_base))


@dataclass
class DeformationFamily:
    """Spec R^ext over the u-line."""

    rees: ReesPresentation

    def fiber(self, c) -> DeformationFiber:
        return deformation_fiber(self.rees, c)

    def general_fiber(self) -> DeformationFiber:
        return self.fiber(Fraction(1))

    def special_fiber(self) -> DeformationFiber:
        return self.fiber(0)
