"""Presented Z-graded algebras k[x]/J: pieces, splits, charts, Veronese, twists."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import NegativeWeights, NonHomogeneousError, NotDegreeOne, UnboundedPiece
from .idealcore import (
    Ideal,
    eliminate,
    hilbert_function as _ideal_hilbert,
    map_kernel,
    saturation,
    standard_monomials,
)
from .polyring import (
    GREVLEX,
    MonomialOrder,
    NonHomogeneous,
    Polynomial,
    RingContext,
    format_terms,
    fresh_name,
    weighted_degree,
)


class GradedAlgebra:
    """k[x]/J with J generated by weighted-homogeneous polynomials."""

    def __init__(self, ctx: RingContext, ideal: Ideal | Iterable[Polynomial] = (), name: str | None = None,
                 meta: Mapping | None = None):
        if not isinstance(ideal, Ideal):
            ideal = Ideal(ctx, ideal)
        for g in ideal.gens:
            if isinstance(weighted_degree(g), NonHomogeneous):
                raise NonHomogeneousError(f"generator {g} is not weighted-homogeneous")
        self.ctx = ctx
        self.ideal = ideal
        self.name = name
        self.meta = dict(meta or {})

    @classmethod
    def polynomial_ring(cls, ctx: RingContext, name: str | None = None) -> GradedAlgebra:
        return cls(ctx, Ideal(ctx, []), name)

    @property
    def is_zero_ring(self) -> bool:
        return self.ideal.is_unit()

    @property
    def is_n_graded(self) -> bool:
        return all(w >= 0 for w in self.ctx.weights)

    def positive_variables(self) -> list[str]:
        return [n for n, w in self.ctx.variables if w > 0]

    def degree_zero_variables(self) -> list[str]:
        return [n for n, w in self.ctx.variables if w == 0]

    def parse(self, text: str) -> Polynomial:
        return self.ctx.parse(text)

    def reduce(self, p: Polynomial) -> Polynomial:
        return self.ideal.normal_form(p)

    def generators(self) -> list[str]:
        return self.ideal.groebner().strings()

    def same_presentation(self, other: GradedAlgebra) -> bool:
        """Same ring (names, weights, field) and the same ideal."""
        return self.ctx.compatible(other.ctx) and self.ideal.equals(other.ideal)

    def __repr__(self) -> str:
        label = self.name or "GradedAlgebra"
        return f"<{label} {self.ctx} / ({', '.join(self.ideal.strings())})>"


def _require_n_graded(B: GradedAlgebra, exc=NegativeWeights):
    if not B.is_n_graded:
        raise exc(f"{B!r} has negative-weight variables")


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: tuple[Polynomial, ...]
    bound: int | None
    shift: int = 0

    def __len__(self) -> int:
        return len(self.basis)

    def strings(self) -> list[str]:
        return [str(m) for m in self.basis]


def _piece_caps(weights: Sequence[int], degree: int, neg_bound: int | None) -> list[int]:
    if any(w <= 0 for w in weights) and neg_bound is None:
        raise UnboundedPiece("a variable has weight <= 0; an exponent bound is required")
    low = sum(w * neg_bound for w in weights if w <= 0) if neg_bound is not None else 0
    caps = []
    for w in weights:
        if w <= 0:
            caps.append(neg_bound)
        else:
            caps.append(max(0, (degree - low) // w))
    return caps


def piece_exponents(B: GradedAlgebra, degree: int, neg_bound: int | None = None,
                    order: MonomialOrder | None = None) -> np.ndarray:
    w = B.ctx.weights
    caps = _piece_caps(w, degree, neg_bound)
    return standard_monomials(B.ideal.groebner(order), B.ctx, w, degree, caps)


def _rows_to_monomials(ctx: RingContext, rows: np.ndarray, order: MonomialOrder | None) -> tuple[Polynomial, ...]:
    key = ctx.key(order)
    exps = sorted((tuple(int(a) for a in r) for r in rows), key=key, reverse=True)
    one = ctx.field(1)
    return tuple(Polynomial(ctx, {e: one}) for e in exps)


def graded_piece_basis(B: GradedAlgebra, d: int, neg_bound: int | None = None, shift: int = 0,
                       order: MonomialOrder | None = None) -> GradedPiece:
    """Standard-monomial basis of B(shift)_d = B_{shift+d}."""
    rows = piece_exponents(B, d + shift, neg_bound, order)
    return GradedPiece(d, _rows_to_monomials(B.ctx, rows, order), neg_bound, shift)


def hilbert_function(B: GradedAlgebra, degrees: Iterable[int]) -> list[tuple[int, int]]:
    return _ideal_hilbert(B.ideal, degrees)


def drop_vanishing_variables(B: GradedAlgebra) -> GradedAlgebra:
    """Isomorphic presentation without the variables that lie in J.

    Each such variable is sent to 0 and removed; e.g. k[x, v]/(x) becomes k[v].
    """
    dead = [n for n in B.ctx.names if B.ideal.contains(B.ctx.var(n))]
    if not dead:
        return B
    ctx = B.ctx.restrict(set(B.ctx.names) - set(dead))
    images = {n: ctx.zero() for n in dead}
    images.update({n: ctx.var(n) for n in ctx.names})
    gens = [g.evaluate(images, ctx) for g in B.ideal.gens]
    return GradedAlgebra(ctx, Ideal(ctx, gens), B.name, B.meta)


@dataclass
class DegreeZeroSplit:
    B0: GradedAlgebra
    Bplus: Ideal


def split_degree_zero(B: GradedAlgebra) -> DegreeZeroSplit:
    """B0 = (J ∩ k[weight-0 vars]) and B+ = (positive-weight variables)."""
    _require_n_graded(B)
    pos = B.positive_variables()
    J0 = eliminate(B.ideal, pos)
    B0 = GradedAlgebra(J0.ctx, J0, f"{B.name}_0" if B.name else None)
    Bplus = Ideal(B.ctx, [B.ctx.var(v) for v in pos])
    return DegreeZeroSplit(B0, Bplus)


@dataclass(frozen=True)
class SplitRow:
    degree: int
    dim_B: int
    dim_B0: int
    dim_Bplus: int
    disjoint: bool

    @property
    def ok(self) -> bool:
        return self.disjoint and self.dim_B == self.dim_B0 + self.dim_Bplus


def split_dimension_check(B: GradedAlgebra, max_degree: int, neg_bound: int = 3) -> list[SplitRow]:
    """Compare |B_d| with |(B0)_d| + |(B+)_d| for 0 <= d <= max_degree.

    Pieces of B are taken with an elimination order (positive variables
    first) so that degree-0 standard monomials are exactly those of B0.
    """
    split = split_degree_zero(B)
    pos = set(B.positive_variables())
    order = MonomialOrder.block(pos) if pos else GREVLEX
    pos_idx = [B.ctx.index(v) for v in pos]
    rows = []
    for d in range(max_degree + 1):
        full = piece_exponents(B, d, neg_bound, order)
        plus = {tuple(r) for r in full if any(r[i] for i in pos_idx)}
        zero_part = piece_exponents(split.B0, d, neg_bound)
        # embed B0's monomials into B's exponent layout
        emb = []
        for r in zero_part:
            e = [0] * B.ctx.nvars
            for j, n in enumerate(split.B0.ctx.names):
                e[B.ctx.index(n)] = int(r[j])
            emb.append(tuple(e))
        all_full = {tuple(r) for r in full}
        disjoint = not (set(emb) & plus) and set(emb) | plus == all_full
        rows.append(SplitRow(d, len(full), len(emb), len(plus), disjoint))
    return rows


# --- charts -------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentMonomial:
    """Monomial with integer exponents, e.g. ``w1*w2^-1``."""

    exps: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, int]) -> LaurentMonomial:
        return cls(tuple(sorted((k, v) for k, v in mapping.items() if v)))

    @classmethod
    def var(cls, name: str) -> LaurentMonomial:
        return cls(((name, 1),))

    def as_dict(self) -> dict[str, int]:
        return dict(self.exps)

    def __mul__(self, other: LaurentMonomial) -> LaurentMonomial:
        d = self.as_dict()
        for k, v in other.exps:
            d[k] = d.get(k, 0) + v
        return LaurentMonomial.of(d)

    def __pow__(self, n: int) -> LaurentMonomial:
        return LaurentMonomial.of({k: v * n for k, v in self.exps})

    def inverse(self) -> LaurentMonomial:
        return self ** -1

    def substitute(self, images: Mapping[str, LaurentMonomial]) -> LaurentMonomial:
        out = LaurentMonomial()
        for k, v in self.exps:
            out = out * (images[k] ** v if k in images else LaurentMonomial.var(k) ** v)
        return out

    def is_one(self) -> bool:
        return not self.exps

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(k if v == 1 else f"{k}^{v}" for k, v in self.exps)


@dataclass
class Chart:
    """Affine chart D+(f) = Spec B_(f) of a Proj atlas."""

    ring: GradedAlgebra  # all weights 0
    generator: str  # distinguished degree-1 variable of the (possibly extended) source
    substitution: dict[str, Polynomial]  # projective variable -> chart expression
    coords: dict[str, str]  # projective variable -> chart variable name
    display: list[str]  # chart ideal generators, terms in the order induced from the source
    source: GradedAlgebra
    stabilized_at: int = 0
    exceptional: Polynomial | None = None

    @property
    def is_zero(self) -> bool:
        return self.ring.is_zero_ring

    def ideal_strings(self) -> list[str]:
        return list(self.display)

    def substitution_strings(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.substitution.items()}

    def laurent_coord(self, var: str) -> LaurentMonomial:
        """Chart coordinate attached to a projective variable (1 for the generator)."""
        if var == self.generator:
            return LaurentMonomial()
        return LaurentMonomial.var(self.coords[var])


def _chart_names(B: GradedAlgebra, generator: str) -> dict[str, str]:
    nonzero = [n for n, w in B.ctx.variables if w != 0]
    others = [n for n in nonzero if n != generator]
    taken = set(B.degree_zero_variables())
    coords = {}
    for n in others:
        base = "w" if len(others) == 1 else f"w{nonzero.index(n) + 1}"
        name = fresh_name(base, taken)
        taken.add(name)
        coords[n] = name
    return coords


def _with_fresh_generator(B: GradedAlgebra, f: Polynomial, base: str = "h") -> tuple[GradedAlgebra, str]:
    if weighted_degree(f) != 1:
        raise NotDegreeOne(f"{f} is not homogeneous of degree 1")
    h = B.ctx.fresh(base)
    ctx = B.ctx.extend([(h, 1)])
    gens = [g.to_context(ctx) for g in B.ideal.gens] + [ctx.var(h) - f.to_context(ctx)]
    return GradedAlgebra(ctx, Ideal(ctx, gens), B.name, B.meta), h


def _as_variable(B: GradedAlgebra, f: Polynomial | str) -> str | None:
    if isinstance(f, str):
        B.ctx.index(f)
        return f
    if len(f.terms) == 1:
        (e, c), = f.terms.items()
        if c == 1 and sum(e) == 1:
            return B.ctx.names[e.index(1)]
    return None


def homogeneous_localization_chart(B: GradedAlgebra, f: Polynomial | str) -> Chart:
    """Presentation of B_(f), the degree-0 part of B localized at a degree-1 element f.

    The ideal is saturated at f first, then dehomogenized: f -> 1 and every
    other variable v of weight w becomes the chart coordinate v / f^w.
    """
    name = _as_variable(B, f)
    if name is None:
        B, name = _with_fresh_generator(B, f)
    if B.ctx.weight(name) != 1:
        raise NotDegreeOne(f"{name} has weight {B.ctx.weight(name)}, not 1")
    return _chart(B, name)


def _chart(B: GradedAlgebra, name: str, coords: dict[str, str] | None = None) -> Chart:
    fpoly = B.ctx.var(name)
    K, steps = saturation(B.ideal, fpoly)
    coords = coords if coords is not None else _chart_names(B, name)
    zero_vars = B.degree_zero_variables()
    order = B.ctx.order if B.ctx.order.kind != "block" else GREVLEX
    cctx = RingContext(B.ctx.field, tuple((n, 0) for n in zero_vars) + tuple((c, 0) for c in coords.values()), order)
    images = {name: cctx.one()}
    for v, c in coords.items():
        images[v] = cctx.var(c)
    subst = {n: images[n] for n, w in B.ctx.variables if w != 0}
    dehom_idx = [None] * B.ctx.nvars
    for i, n in enumerate(B.ctx.names):
        if n == name:
            continue
        dehom_idx[i] = cctx.index(coords.get(n, n))
    gens, display, seen = [], [], set()
    for g in K.groebner().basis:
        terms = []
        for e, c in g.sorted_terms():
            new = [0] * cctx.nvars
            for i, a in enumerate(e):
                if dehom_idx[i] is not None:
                    new[dehom_idx[i]] += a
            terms.append((tuple(new), c))
        h = Polynomial(cctx, dict(terms))
        if not h or h in seen:
            continue
        seen.add(h)
        gens.append(h)
        display.append(format_terms(cctx, terms))
    if any(h.is_constant() for h in gens):
        gens, display = [cctx.one()], ["1"]
    ring = GradedAlgebra(cctx, Ideal(cctx, gens))
    return Chart(ring, name, subst, dict(coords), display, B, steps)


@dataclass(frozen=True)
class LocalizationCheck:
    forward_well_defined: bool
    backward_well_defined: bool
    round_trip_chart: bool
    round_trip_local: bool

    @property
    def ok(self) -> bool:
        return all((self.forward_well_defined, self.backward_well_defined, self.round_trip_chart, self.round_trip_local))


def verify_localization_chart(B: GradedAlgebra, chart: Chart) -> LocalizationCheck:
    """Check B_(f)[t, t^-1] <-> B_f (t -> f) are mutually inverse on generators.

    B_f = k[x, s]/(J + (s*f - 1)) and B_(f)[t^{±1}] = chart ring[t, t']/(t*t' - 1).
    """
    src = chart.source
    f = chart.generator
    taken = set(src.ctx.names) | set(chart.ring.ctx.names)
    s = fresh_name("s", taken)
    t = fresh_name("t", taken | {s})
    ti = fresh_name("ti", taken | {s, t})
    # B_f
    lctx = src.ctx.extend([(s, -1)])
    Lf = Ideal(lctx, [g.to_context(lctx) for g in src.ideal.gens] + [lctx.var(s) * lctx.var(f) - 1])
    # chart[t, t^-1]
    cctx = chart.ring.ctx.extend([(t, 1), (ti, -1)])
    Lc = Ideal(cctx, [g.to_context(cctx) for g in chart.ring.ideal.gens] + [cctx.var(t) * cctx.var(ti) - 1])

    def tpow(k: int) -> Polynomial:
        return cctx.var(t) ** k if k >= 0 else cctx.var(ti) ** (-k)

    def spow(k: int) -> Polynomial:
        # f^k in B_f, negative powers through s
        return lctx.var(f) ** k if k >= 0 else lctx.var(s) ** (-k)

    # alpha: chart[t^{±1}] -> B_f
    alpha = {t: lctx.var(f), ti: lctx.var(s)}
    for v, c in chart.coords.items():
        alpha[c] = lctx.var(v) * spow(-src.ctx.weight(v))
    # beta: B_f -> chart[t^{±1}]
    beta = {f: cctx.var(t), s: cctx.var(ti)}
    for v, c in chart.coords.items():
        beta[v] = cctx.var(c) * tpow(src.ctx.weight(v))
    fwd = all(Lf.contains(g.evaluate(alpha, lctx)) for g in Lc.gens)
    bwd = all(Lc.contains(g.evaluate(beta, cctx)) for g in Lf.gens)
    rt_chart = all(
        Lc.contains(cctx.var(n).evaluate(alpha, lctx).evaluate(beta, cctx) - cctx.var(n)) for n in cctx.names
    )
    rt_local = all(
        Lf.contains(lctx.var(n).evaluate(beta, cctx).evaluate(alpha, lctx) - lctx.var(n)) for n in lctx.names
    )
    return LocalizationCheck(fwd, bwd, rt_chart, rt_local)


# --- atlases and twists -------------------------------------------------------

@dataclass
class ProjAtlas:
    source: GradedAlgebra
    generators: list[str]
    charts: list[Chart]
    transitions: dict[tuple[int, int], dict[str, LaurentMonomial]] = field(default_factory=dict)
    reports: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.charts or all(c.is_zero for c in self.charts)


def chart_transition(atlas: ProjAtlas, i: int, j: int) -> dict[str, LaurentMonomial]:
    """Chart-i coordinates written in chart-j coordinates on the overlap."""
    ci, cj = atlas.charts[i], atlas.charts[j]
    fi = ci.generator
    w = atlas.source.ctx
    out = {}
    for v, name in ci.coords.items():
        out[name] = cj.laurent_coord(v) * cj.laurent_coord(fi) ** (-w.weight(v))
    return out


def transitions_compose_to_identity(atlas: ProjAtlas) -> bool:
    for (i, j), fwd in atlas.transitions.items():
        back = atlas.transitions.get((j, i))
        if back is None:
            return False
        for name, lm in fwd.items():
            if lm.substitute(back) != LaurentMonomial.var(name):
                return False
    return True


@dataclass(frozen=True)
class TwistEntry:
    cocycle: LaurentMonomial  # (f_i / f_j)^n in chart-j coordinates
    inverse: LaurentMonomial


def twist_cocycle(atlas: ProjAtlas, n: int) -> dict[tuple[int, int], TwistEntry]:
    """Transition units of O(n): g_ij = (f_i/f_j)^n on D+(f_i f_j), in chart-j coordinates."""
    table = {}
    for i in range(len(atlas.charts)):
        for j in range(len(atlas.charts)):
            g = atlas.charts[j].laurent_coord(atlas.charts[i].generator) ** n
            table[(i, j)] = TwistEntry(g, g.inverse())
    return table


def twist_multiplicative(atlas: ProjAtlas, n: int, m: int) -> bool:
    a, b, c = twist_cocycle(atlas, n), twist_cocycle(atlas, m), twist_cocycle(atlas, n + m)
    return all(a[k].cocycle * b[k].cocycle == c[k].cocycle for k in c) and all(
        (a[k].cocycle * a[k].inverse).is_one() for k in a
    )


def twist_cocycle_condition(atlas: ProjAtlas, n: int) -> bool:
    """g_ij * g_jk = g_ik after moving g_ij into chart-k coordinates."""
    table = twist_cocycle(atlas, n)
    r = range(len(atlas.charts))
    for i in r:
        for j in r:
            for k in r:
                if j == k:
                    moved = table[(i, j)].cocycle
                else:
                    moved = table[(i, j)].cocycle.substitute(atlas.transitions[(j, k)])
                if moved * table[(j, k)].cocycle != table[(i, k)].cocycle:
                    return False
    return True


# --- Veronese and generation -----------------------------------------------------

def _pure_positive_standard(B: GradedAlgebra, degree: int, order: MonomialOrder | None = None) -> np.ndarray:
    w = B.ctx.weights
    caps = [0 if x == 0 else max(0, degree // x) for x in w]
    return standard_monomials(B.ideal.groebner(order), B.ctx, w, degree, caps)


def veronese(B: GradedAlgebra, delta: int, degree_bound: int | None = None) -> GradedAlgebra:
    """Presentation of B^(delta), with B^(delta)_d = B_{delta*d}.

    Weight-0 variables are kept; every standard monomial of degree ``delta`` in
    the positive-weight variables becomes a fresh weight-1 generator.
    """
    _require_n_graded(B)
    if delta < 1:
        raise ValueError("Veronese degree must be positive")
    rows = _pure_positive_standard(B, delta)
    monos = _rows_to_monomials(B.ctx, rows, None)
    zero_vars = B.degree_zero_variables()
    taken = set(zero_vars)
    names = []
    for k in range(len(monos)):
        nm = fresh_name("w" if len(monos) == 1 else f"w{k + 1}", taken)
        taken.add(nm)
        names.append(nm)
    sctx = RingContext(B.ctx.field, tuple((n, 0) for n in zero_vars) + tuple((n, 1) for n in names), B.ctx.order
                       if B.ctx.order.kind != "block" else GREVLEX)
    images = [B.ctx.var(n) for n in zero_vars] + list(monos)
    ker = map_kernel(sctx, images, B.ctx, B.ideal)
    meta = {"images": {n: str(m) for n, m in zip(names, monos)}, "degree_bound": degree_bound, "delta": delta}
    return GradedAlgebra(sctx, ker, f"{B.name}^({delta})" if B.name else None, meta)


def veronese_hilbert_check(B: GradedAlgebra, delta: int, max_degree: int) -> list[tuple[int, int, int]]:
    """Rows (d, dim B^(delta)_d, dim B_{delta d}); needs positive weights on B."""
    V = veronese(B, delta, max_degree * delta)
    hv = dict(hilbert_function(V, range(max_degree + 1)))
    hb = dict(hilbert_function(B, [delta * d for d in range(max_degree + 1)]))
    return [(d, hv[d], hb[delta * d]) for d in range(max_degree + 1)]


@dataclass
class GenerationReport:
    ok: bool
    bound: int
    failures: dict[int, list[str]]

    def __bool__(self) -> bool:
        return self.ok


def generated_in_degree_one(B: GradedAlgebra, bound: int = 6) -> GenerationReport:
    """Check B_d = B_1 * B_{d-1} for 2 <= d <= bound.

    B_d is generated over B_0 by standard monomials in the positive-weight
    variables, so it suffices that each lies in J + (weight-1 variables).
    """
    _require_n_graded(B)
    ones = [B.ctx.var(n) for n, w in B.ctx.variables if w == 1]
    D1 = Ideal(B.ctx, B.ideal.gens + tuple(ones))
    failures: dict[int, list[str]] = {}
    for d in range(2, bound + 1):
        rows = _pure_positive_standard(B, d)
        bad = [m for m in _rows_to_monomials(B.ctx, rows, None) if not D1.contains(m)]
        if bad:
            failures[d] = [str(m) for m in bad]
    return GenerationReport(not failures, bound, failures)
