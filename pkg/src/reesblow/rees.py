"""Extended Rees algebras of finite quotients A -> A/(f_1..f_k), at pi_0.

The extended Rees algebra is presented as

    A[v_1..v_k, u] / (J_A + (v_i*u - f_i)),   deg v_i = 1, deg u = -1,

where ``u`` plays the role of t^-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import _kernels
from .errors import ContextMismatch, IllFormedPayload, NonHomogeneousError
from .graded import GradedAlgebra, _rows_to_monomials, piece_exponents
from .idealcore import (
    Ideal,
    annihilator,
    eliminate,
    ideal_power,
    map_kernel,
    saturation,
    standard_monomials,
)
from .polyring import GREVLEX, MonomialOrder, Polynomial, RingContext, fresh_name


@dataclass
class ImmersionData:
    """Base algebra A = k[x]/J_A (all weights 0) and the sequence f."""

    base: GradedAlgebra
    f: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if any(w != 0 for w in self.base.ctx.weights):
            raise NonHomogeneousError("the base algebra must be concentrated in degree 0")
        out = []
        for g in self.f:
            if isinstance(g, str):
                g = self.base.ctx.parse(g)
            if not g.ctx.compatible(self.base.ctx):
                raise ContextMismatch(f"{g} does not live in the base ring")
            out.append(self.base.ideal.normal_form(g))
        self.f = tuple(out)

    @property
    def ideal(self) -> Ideal:
        """I = (f) + J_A in the ambient ring of A."""
        return Ideal(self.base.ctx, self.base.ideal.gens + self.f)


@dataclass
class ReesPresentation:
    algebra: GradedAlgebra
    data: ImmersionData
    v_names: tuple[str, ...]
    u_name: str
    regularized: bool = False

    @property
    def ctx(self) -> RingContext:
        return self.algebra.ctx

    @property
    def ideal(self) -> Ideal:
        return self.algebra.ideal

    def u(self) -> Polynomial:
        return self.ctx.var(self.u_name)

    def with_ideal(self, ideal: Ideal, regularized: bool) -> ReesPresentation:
        return ReesPresentation(GradedAlgebra(self.ctx, ideal, self.algebra.name), self.data, self.v_names,
                                self.u_name, regularized)


def rees_extended(data: ImmersionData) -> ReesPresentation:
    A = data.base
    taken = set(A.ctx.names)
    vs = []
    k = len(data.f)
    for i in range(k):
        v = fresh_name("v" if k == 1 else f"v{i + 1}", taken)
        taken.add(v)
        vs.append(v)
    u = fresh_name("u", taken)
    order = A.ctx.order if A.ctx.order.kind != "block" else GREVLEX
    ctx = RingContext(A.ctx.field, A.ctx.variables + tuple((v, 1) for v in vs) + ((u, -1),), order)
    uu = ctx.var(u)
    gens = [g.to_context(ctx) for g in A.ideal.gens]
    gens += [ctx.var(v) * uu - fi.to_context(ctx) for v, fi in zip(vs, data.f)]
    name = f"R({A.name})" if A.name else None
    return ReesPresentation(GradedAlgebra(ctx, Ideal(ctx, gens), name), data, tuple(vs), u)


def _algebra_and_u(R) -> tuple[GradedAlgebra, str]:
    if isinstance(R, ReesPresentation):
        return R.algebra, R.u_name
    if isinstance(R, Regularization):
        return R.algebra, R.rees.u_name if R.rees else R.algebra.ctx.tinv()
    u = R.ctx.tinv()
    if u is None:
        raise ContextMismatch(f"{R!r} has no weight -1 variable to act as t^-1")
    return R, u


def cone(R) -> GradedAlgebra:
    """R/(t^-1): add u to the ideal and eliminate it."""
    Q, u = _algebra_and_u(R)
    I = Ideal(Q.ctx, Q.ideal.gens + (Q.ctx.var(u),))
    J = eliminate(I, [u])
    out = GradedAlgebra(J.ctx, J, f"cone({Q.name})" if Q.name else None)
    if not out.is_n_graded:
        raise NonHomogeneousError("cone is not N-graded")
    return out


@dataclass
class Regularization:
    algebra: GradedAlgebra
    kernel: Ideal  # generators of the saturation not already in J
    stabilized_at: int
    rees: ReesPresentation | None = None

    @property
    def is_zero_ring(self) -> bool:
        return self.algebra.is_zero_ring

    def __iter__(self):
        return iter((self.algebra, self.kernel, self.stabilized_at))


def regularize(Q) -> Regularization:
    """Quotient by the u-power torsion, i.e. J : u^∞."""
    alg, u = _algebra_and_u(Q)
    sat, steps = saturation(alg.ideal, alg.ctx.var(u))
    kernel = Ideal(alg.ctx, [g for g in sat.groebner().basis if not alg.ideal.contains(g)])
    reg = GradedAlgebra(alg.ctx, sat, f"{alg.name}^reg" if alg.name else None)
    rees = None
    if isinstance(Q, ReesPresentation):
        rees = ReesPresentation(reg, Q.data, Q.v_names, Q.u_name, True)
    return Regularization(reg, kernel, steps, rees)


class TRegularity(NamedTuple):
    regular: bool
    obstruction: Ideal  # reduced generators of (J : u) not in J


def t_regularity(R) -> TRegularity:
    alg, u = _algebra_and_u(R)
    col = annihilator(alg.ctx.var(u), alg.ideal)
    obs = []
    for g in col.groebner().basis:
        r = alg.ideal.normal_form(g)
        if r and r not in obs:
            obs.append(r)
    return TRegularity(not obs, Ideal(alg.ctx, obs))


# --- classical comparison ---------------------------------------------------------

@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    lands_in_power: bool
    lifts: bool
    injective: bool

    @property
    def match(self) -> bool:
        return self.lands_in_power and self.lifts and self.injective


@dataclass
class ClassicalSide:
    well_defined: bool
    degrees: list[DegreeCheck]

    @property
    def agrees(self) -> bool:
        return self.well_defined and all(d.match for d in self.degrees)


@dataclass
class ClassicalComparison:
    bound: int
    t_regular: bool
    unregularized: ClassicalSide
    regularized: ClassicalSide
    powers: dict[int, list[str]] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.regularized.agrees


def _pure_v_monomials(alg: GradedAlgebra, v_names: Sequence[str], degree: int, standard: bool = True):
    ctx = alg.ctx
    caps = [degree if n in v_names else 0 for n in ctx.names]
    if standard:
        rows = standard_monomials(alg.ideal.groebner(), ctx, ctx.weights, degree, caps)
    else:
        rows = _kernels.enumerate_weighted(ctx.weights, degree, caps)
    return _rows_to_monomials(ctx, rows, None)


def _classical_side(rees: ReesPresentation, powers: dict[int, Ideal], bound: int) -> ClassicalSide:
    data = rees.data
    A = data.base
    alg = rees.algebra
    taken = set(A.ctx.names)
    t = fresh_name("t", taken)
    s = fresh_name("s", taken | {t})
    tctx = A.ctx.extend([(t, 1), (s, -1)])
    target = Ideal(tctx, [g.to_context(tctx) for g in A.ideal.gens] + [tctx.var(t) * tctx.var(s) - 1])
    images = {rees.u_name: tctx.var(s)}
    to_A = {rees.u_name: A.ctx.one()}
    for v, fi in zip(rees.v_names, data.f):
        images[v] = fi.to_context(tctx) * tctx.var(t)
        to_A[v] = fi
    well_defined = all(target.contains(g.evaluate(images, tctx)) for g in alg.ideal.gens)
    img_list = [images.get(n, tctx.var(n) if n in tctx.names else None) for n in alg.ctx.names]
    ker = map_kernel(alg.ctx, img_list, tctx, target)
    extra = [g for g in ker.groebner().basis if not alg.ideal.contains(g)]
    rows = []
    for n in range(1, bound + 1):
        gens = _pure_v_monomials(alg, rees.v_names, n)
        evals = [m.evaluate(to_A, A.ctx) for m in gens]
        In = powers[n]
        lands = all(In.contains(e) for e in evals)
        span = Ideal(A.ctx, A.ideal.gens + tuple(evals))
        lifts = all(span.contains(g) for g in In.gens)
        injective = True
        for g in extra:
            dg = g.weighted_degree()
            shift = n - dg
            if shift >= 0:
                mults = _pure_v_monomials(alg, rees.v_names, shift, standard=False)
            else:
                mults = (alg.ctx.var(rees.u_name) ** (-shift),)
            if any(not alg.ideal.contains(mu * g) for mu in mults):
                injective = False
                break
        rows.append(DegreeCheck(n, lands, lifts, injective))
    return ClassicalSide(well_defined, rows)


def compare_to_classical(R: ReesPresentation, bound: int = 5) -> ClassicalComparison:
    """Compare pi_0 pieces against I^n t^n, I = (f) + J_A, for 1 <= n <= bound.

    The evaluation v_i -> f_i t, u -> t^-1 maps the presentation into
    A[t, t^-1]; a degree matches when it lands in I^n, hits every generator
    of I^n, and is injective there.
    """
    data = R.data
    I = data.ideal
    powers = {n: ideal_power(I, n) for n in range(1, bound + 1)}
    base = R if not R.regularized else rees_extended(data)
    unreg = _classical_side(base, powers, bound)
    reg = regularize(base).rees
    regside = _classical_side(reg, powers, bound)
    return ClassicalComparison(
        bound,
        t_regularity(base).regular,
        unreg,
        regside,
        {n: powers[n].strings() for n in powers},
    )


# --- naturality -------------------------------------------------------------------

@dataclass
class GradedMap:
    source: GradedAlgebra
    target: GradedAlgebra
    images: dict[str, Polynomial]

    def apply(self, p: Polynomial) -> Polynomial:
        return p.evaluate(self.images, self.target.ctx)

    def failing_relations(self) -> list[Polynomial]:
        return [g for g in self.source.ideal.gens if not self.target.ideal.contains(self.apply(g))]

    def well_defined(self) -> bool:
        return not self.failing_relations()

    def surjective_in_degree(self, d: int, v_names: Sequence[str], source_v: Sequence[str]) -> bool:
        """Degree-d piece of the target is hit, as a module over degree 0."""
        if d == 0:
            # degree-0 generators: each weight-0 target variable is the image of a source variable
            imgs = [self.apply(self.source.ctx.var(n)) for n, w in self.source.ctx.variables if w == 0]
            J = self.target.ideal
            return all(
                any(J.contains(img - self.target.ctx.var(n)) for img in imgs)
                for n, w in self.target.ctx.variables if w == 0
            )
        tgt = _pure_v_monomials(self.target, v_names, d)
        src = _pure_v_monomials(self.source, source_v, d, standard=False)
        span = Ideal(self.target.ctx, self.target.ideal.gens + tuple(self.apply(m) for m in src))
        return all(span.contains(m) for m in tgt)

    def image_strings(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.images.items()}


@dataclass
class NaturalityReport:
    mode: str
    well_defined: bool
    two_sided: bool | None = None
    verbatim: bool | None = None
    surjective: dict[int, bool] = field(default_factory=dict)
    source: ReesPresentation | None = None
    target: ReesPresentation | None = None

    @property
    def ok(self) -> bool:
        parts = [self.well_defined]
        if self.two_sided is not None:
            parts.append(self.two_sided)
        parts.extend(self.surjective.values())
        return all(parts)


@dataclass
class BaseChange:
    data: ImmersionData
    target: GradedAlgebra  # A', weights 0
    images: dict[str, Polynomial]  # A-variable -> element of A'


@dataclass
class TargetChange:
    C: GradedAlgebra
    a: tuple[Polynomial, ...]
    b: tuple[Polynomial, ...]


def _base_change(payload: BaseChange) -> tuple[GradedMap, NaturalityReport]:
    data, Ap = payload.data, payload.target
    A = data.base
    images = {n: payload.images.get(n, Ap.ctx.var(n) if n in Ap.ctx.names else None) for n in A.ctx.names}
    if any(v is None for v in images.values()):
        raise IllFormedPayload("every variable of A needs an image in A'")
    ring_map = GradedMap(A, Ap, images)
    bad = ring_map.failing_relations()
    if bad:
        raise IllFormedPayload(f"relations {', '.join(map(str, bad))} do not vanish in A'")
    fp = tuple(ring_map.apply(g) for g in data.f)
    R = rees_extended(data)
    Rp = rees_extended(ImmersionData(Ap, fp))
    rimages = dict(images)
    for v, vp in zip(R.v_names, Rp.v_names):
        rimages[v] = Rp.ctx.var(vp)
    rimages[R.u_name] = Rp.ctx.var(Rp.u_name)
    rimages = {k: v.to_context(Rp.ctx) if v.ctx is not Rp.ctx else v for k, v in rimages.items()}
    gmap = GradedMap(R.algebra, Rp.algebra, rimages)
    changed = Ideal(Rp.ctx, [g.to_context(Rp.ctx) for g in Ap.ideal.gens] + [gmap.apply(g) for g in R.ideal.gens])
    two_sided = changed.contains_ideal(Rp.ideal) and Rp.ideal.contains_ideal(changed)
    verbatim = sorted(changed.strings()) == sorted(Rp.ideal.strings())
    report = NaturalityReport("base_change", gmap.well_defined(), two_sided, verbatim, source=R, target=Rp)
    return gmap, report


def _target(payload: TargetChange, bound: int) -> tuple[GradedMap, NaturalityReport]:
    C = payload.C
    a = tuple(payload.a)
    b = tuple(payload.b)
    R_BC = rees_extended(ImmersionData(C, a + b))
    A = GradedAlgebra(C.ctx, Ideal(C.ctx, C.ideal.gens + a), f"{C.name}/(a)" if C.name else None)
    R_BA = rees_extended(ImmersionData(A, b))
    tctx = R_BA.ctx
    images = {n: tctx.var(n) for n in C.ctx.names}
    for i, v in enumerate(R_BC.v_names):
        images[v] = tctx.zero() if i < len(a) else tctx.var(R_BA.v_names[i - len(a)])
    images[R_BC.u_name] = tctx.var(R_BA.u_name)
    gmap = GradedMap(R_BC.algebra, R_BA.algebra, images)
    if not gmap.well_defined():
        raise IllFormedPayload("the induced map does not respect the Rees relations")
    surj = {d: gmap.surjective_in_degree(d, R_BA.v_names, R_BC.v_names) for d in range(bound + 1)}
    report = NaturalityReport("target", True, surjective=surj, source=R_BC, target=R_BA)
    return gmap, report


def rees_naturality(mode: str, payload, bound: int = 4) -> tuple[GradedMap, NaturalityReport]:
    if mode == "base_change":
        return _base_change(payload)
    if mode == "target":
        return _target(payload, bound)
    raise ValueError(f"unknown naturality mode {mode!r}")


# --- invariants as callable checks ---------------------------------------------------

def nonpositive_shape(R: ReesPresentation, max_m: int = 4, bound: int = 3) -> dict[int, bool]:
    """For 0 <= m <= max_m: standard monomials of degree -m are exactly {s * u^m}, s standard in A.

    Uses the order with u in the leading block so that every v_i*u is a
    leading monomial; exponents of weight <= 0 variables are capped at ``bound``.
    """
    order = MonomialOrder.block([R.u_name])
    A = R.data.base
    a_rows = {tuple(int(x) for x in r) for r in piece_exponents(A, 0, bound)} if A.ctx.nvars else {()}
    ui = R.ctx.index(R.u_name)
    ax = [R.ctx.index(n) for n in A.ctx.names]
    out = {}
    for m in range(max_m + 1):
        if m > bound:
            break
        rows = piece_exponents(R.algebra, -m, bound, order)
        got = set()
        for r in rows:
            got.add(tuple(int(x) for x in r))
        expected = set()
        for s in a_rows:
            e = [0] * R.ctx.nvars
            for j, i in enumerate(ax):
                e[i] = s[j]
            e[ui] = m
            expected.add(tuple(e))
        out[m] = got == expected
    return out


def cone_degree_zero_is_base(R: ReesPresentation) -> bool:
    """The degree-0 part of cone(R) is A/(f), presented on the base variables."""
    C = cone(R)
    zero = eliminate(C.ideal, [v for v in R.v_names])
    A = R.data.base
    expect = Ideal(A.ctx, A.ideal.gens + R.data.f)
    return zero.ctx.compatible(A.ctx) and zero.equals(Ideal(zero.ctx, [g.to_context(zero.ctx) for g in expect.gens]))
