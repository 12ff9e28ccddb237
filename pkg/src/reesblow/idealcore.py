"""Ideals, reduced Groebner bases and the ideal calculus built on them."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _gb, _kernels
from .errors import ContextMismatch, DivisionByZeroGenerator, NonPositiveWeights
from .polyring import GREVLEX, MonomialOrder, Polynomial, RingContext, fresh_name


@dataclass(frozen=True)
class ReducedGB:
    order: MonomialOrder
    basis: tuple[Polynomial, ...]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, p: Polynomial) -> Polynomial:
        if not self.basis:
            return p
        ctx = self.basis[0].ctx
        if not ctx.compatible(p.ctx):
            raise ContextMismatch(f"{p.ctx} vs {ctx}")
        key = ctx.key(self.order)
        pairs = [(g.leading_monomial(self.order), g.terms) for g in self.basis]
        return Polynomial(ctx, _gb.reduce_full(p.terms, pairs, key, ctx.field.characteristic))

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def strings(self) -> list[str]:
        """Elements printed with terms in this basis's order, leading term first."""
        return [g.format(self.order) for g in self.basis]


class Ideal:
    """Ideal of a polynomial ring given by generators, with a per-order GB cache."""

    def __init__(self, ctx: RingContext, gens: Iterable[Polynomial] = ()):
        self.ctx = ctx
        out = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ctx.const(g)
            if not ctx.compatible(g.ctx):
                raise ContextMismatch(f"generator {g} lives in {g.ctx}, not {ctx}")
            if g.ctx is not ctx:
                g = Polynomial(ctx, g.terms)
            if g:
                out.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(out)
        self._gb: dict[MonomialOrder, ReducedGB] = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ctx: RingContext, texts: Sequence[str]) -> Ideal:
        return cls(ctx, [ctx.parse(t) for t in texts])

    def groebner(self, order: MonomialOrder | None = None) -> ReducedGB:
        order = order or self.ctx.order
        with self._lock:
            gb = self._gb.get(order)
            if gb is None:
                gb = self._gb[order] = _compute_gb(self.ctx, self.gens, order)
        return gb

    def _seed(self, order: MonomialOrder, basis: Sequence[Polynomial]) -> None:
        with self._lock:
            self._gb.setdefault(order, ReducedGB(order, tuple(basis)))

    def normal_form(self, p: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        return self.groebner(order).normal_form(p)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def contains_ideal(self, other: Ideal) -> bool:
        _check(self, other)
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def equals(self, other: Ideal) -> bool:
        """Equality of reduced Groebner bases under grevlex."""
        _check(self, other)
        return self.groebner(GREVLEX).basis == other.groebner(GREVLEX).basis

    def __add__(self, other: Ideal) -> Ideal:
        return ideal_sum(self, other)

    def __mul__(self, other: Ideal) -> Ideal:
        return ideal_product(self, other)

    def strings(self) -> list[str]:
        return [str(g) for g in self.gens]

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(self.strings()) + ")"


def _compute_gb(ctx: RingContext, gens: Sequence[Polynomial], order: MonomialOrder) -> ReducedGB:
    key = ctx.key(order)
    raw = _gb.buchberger([g.terms for g in gens], key, ctx.field.characteristic)
    if raw and len(raw) == 1 and all(not any(e) for e in raw[0]):
        basis = (ctx.one(),)
    else:
        basis = tuple(Polynomial(ctx, f) for f in raw)
    return ReducedGB(order, basis)


def _check(I: Ideal, J: Ideal) -> None:
    if not I.ctx.compatible(J.ctx):
        raise ContextMismatch(f"{I.ctx} vs {J.ctx}")


def groebner(I: Ideal, order: MonomialOrder | str | None = None) -> ReducedGB:
    if isinstance(order, str):
        order = MonomialOrder(order)
    return I.groebner(order)


def normal_form(p: Polynomial, I: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    if not p.ctx.compatible(I.ctx):
        raise ContextMismatch(f"{p.ctx} vs {I.ctx}")
    return I.normal_form(p, order)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check(I, J)
    return Ideal(I.ctx, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check(I, J)
    seen, out = set(), []
    for f in I.gens:
        for g in J.gens:
            h = f * g
            if h not in seen:
                seen.add(h)
                out.append(h)
    return Ideal(I.ctx, out)


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative ideal power")
    out = Ideal(I.ctx, [I.ctx.one()])
    for _ in range(n):
        out = Ideal(I.ctx, _minimal_gens(ideal_product(out, I)))
    return out


def _minimal_gens(I: Ideal) -> list[Polynomial]:
    """Drop generators already in the ideal of the earlier ones (keeps powers small)."""
    keep: list[Polynomial] = []
    for g in I.gens:
        if keep and Ideal(I.ctx, keep).contains(g):
            continue
        keep.append(g)
    return keep


def _aux_context(ctx: RingContext, base: str = "t") -> tuple[RingContext, str]:
    t = fresh_name(base, ctx.names)
    return ctx.extend([(t, 0)], front=True, order=MonomialOrder.block([t])), t


def intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    _check(I, J)
    if not I.gens or not J.gens:
        return Ideal(I.ctx, [])
    big, t = _aux_context(I.ctx)
    tv = big.var(t)
    gens = [tv * f.to_context(big) for f in I.gens]
    gens += [(1 - tv) * g.to_context(big) for g in J.gens]
    return _eliminate_in(Ideal(big, gens), {t}, I.ctx)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises ``ValueError`` otherwise."""
    if not g:
        raise DivisionByZeroGenerator("division by the zero polynomial")
    ctx = f.ctx
    p = ctx.field.characteristic
    key = ctx.key()
    lg = g.leading_monomial()
    inv = ctx.field.inv(g.terms[lg])
    rem = dict(f.terms)
    quot: dict = {}
    while rem:
        m = max(rem, key=key)
        if not _gb.divides(lg, m):
            raise ValueError(f"{g} does not divide {f}")
        c = rem[m] * inv
        if p:
            c %= p
        shift = tuple(x - y for x, y in zip(m, lg))
        quot[shift] = c
        for e, gc in g.terms.items():
            e2 = tuple(x + y for x, y in zip(e, shift))
            v = rem.get(e2, 0) - c * gc
            if p:
                v %= p
            if v:
                rem[e2] = v
            else:
                rem.pop(e2, None)
    return Polynomial(ctx, quot)


def colon_element(I: Ideal, g: Polynomial) -> Ideal:
    """I : g computed as (I ∩ (g)) / g."""
    if not g:
        raise DivisionByZeroGenerator("colon by the zero polynomial")
    if not I.gens:
        return Ideal(I.ctx, [])
    if I.contains(g):
        return Ideal(I.ctx, [I.ctx.one()])
    inter = intersection(I, Ideal(I.ctx, [g]))
    return Ideal(I.ctx, [exact_divide(h, g) for h in inter.groebner().basis])


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J = ∩ (I : g) over the generators g of J."""
    _check(I, J)
    if not J.gens:
        raise DivisionByZeroGenerator("quotient by an ideal with only zero generators")
    out = None
    for g in J.gens:
        q = colon_element(I, g)
        out = q if out is None else intersection(out, q)
    return out


def ideal_algebra(op: str, I: Ideal, J: Ideal) -> Ideal:
    ops = {"sum": ideal_sum, "product": ideal_product, "intersection": intersection, "quotient": quotient}
    if op not in ops:
        raise ValueError(f"unknown ideal operation {op!r}")
    return ops[op](I, J)


def saturation(I: Ideal, f: Polynomial) -> tuple[Ideal, int]:
    """I : f^∞ by iterated colon.

    Returns the saturated ideal and the number of colon steps that changed
    the ideal, i.e. the least k with I : f^k = I : f^∞.
    """
    if not f:
        raise DivisionByZeroGenerator("saturation by zero")
    cur = I
    steps = 0
    while True:
        nxt = colon_element(cur, f)
        if nxt.equals(cur):
            return _canonical(cur), steps
        cur = nxt
        steps += 1


def saturation_rabinowitsch(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^∞ as (I + (1 - y*f)) ∩ k[x]; used to cross-check :func:`saturation`."""
    big, y = _aux_context(I.ctx, "y")
    yv = big.var(y)
    gens = [g.to_context(big) for g in I.gens] + [1 - yv * f.to_context(big)]
    return _eliminate_in(Ideal(big, gens), {y}, I.ctx)


def _canonical(I: Ideal) -> Ideal:
    """Same ideal, generated by its reduced basis in the ring's order."""
    gb = I.groebner()
    out = Ideal(I.ctx, gb.basis)
    out._seed(gb.order, gb.basis)
    return out


def _eliminate_in(I: Ideal, elim: set[str], target: RingContext) -> Ideal:
    order = MonomialOrder.block(elim)
    gb = I.groebner(order)
    idx = [I.ctx.index(v) for v in elim]
    kept = [g for g in gb.basis if all(e[i] == 0 for e in g.terms for i in idx)]
    basis = [g.to_context(target) for g in kept]
    out = Ideal(target, basis)
    restricted = _restricted_order(I.ctx, elim, target)
    if restricted is not None:
        out._seed(restricted, sorted(basis, key=lambda g: target.key(restricted)(g.leading_monomial(restricted)), reverse=True))
    return out


def _restricted_order(big: RingContext, elim: set[str], target: RingContext) -> MonomialOrder | None:
    # block order restricted to the surviving variables is grevlex on them,
    # provided the surviving variables keep their relative order
    names = [n for n in big.names if n not in elim]
    if list(target.names) != names:
        return None
    return GREVLEX


def eliminate(I: Ideal, variables: Iterable[str]) -> Ideal:
    """I ∩ k[remaining variables], in the restricted ring."""
    elim = set(variables)
    for v in elim:
        I.ctx.index(v)
    target = I.ctx.restrict([n for n in I.ctx.names if n not in elim])
    if not elim:
        return I
    return _eliminate_in(I, elim, target)


def map_kernel(source: RingContext, images: Sequence[Polynomial], target_ctx: RingContext,
               target_ideal: Ideal | None = None) -> Ideal:
    """Kernel of k[source] -> k[target]/target_ideal, x_i -> images[i]."""
    if len(images) != source.nvars:
        raise ContextMismatch(f"{len(images)} images for {source.nvars} source variables")
    for img in images:
        if not img.ctx.compatible(target_ctx):
            raise ContextMismatch(f"image {img} not in {target_ctx}")
    if target_ideal is not None and not target_ideal.ctx.compatible(target_ctx):
        raise ContextMismatch("target ideal lives in another ring")
    taken = set(target_ctx.names)
    renamed = []
    for n in source.names:
        r = fresh_name(n, taken) if n in taken else n
        taken.add(r)
        renamed.append(r)
    tnames = list(target_ctx.names)
    big = RingContext(
        source.field,
        tuple(zip(renamed, source.weights)) + target_ctx.variables,
        MonomialOrder.block(tnames) if tnames else GREVLEX,
    )
    gens = [big.var(r) - img.to_context(big) for r, img in zip(renamed, images)]
    if target_ideal is not None:
        gens += [g.to_context(big) for g in target_ideal.gens]
    inner = RingContext(source.field, tuple(zip(renamed, source.weights)), GREVLEX)
    ker = _eliminate_in(Ideal(big, gens), set(tnames), inner)
    rename = {r: source.var(n) for r, n in zip(renamed, source.names)}
    out = Ideal(source, [g.evaluate(rename, source) for g in ker.gens])
    return out


@dataclass(frozen=True)
class RegularSequenceWitness:
    index: int  # 0-based position of the failing element (len(f) when 1 is in the ideal)
    element: Polynomial


def regular_sequence_test(f: Sequence[Polynomial], J: Ideal) -> tuple[bool, RegularSequenceWitness | None]:
    """Iterated-colon test that ``f`` is a regular sequence on k[x]/J."""
    base = J
    for i, fi in enumerate(f):
        if not fi.ctx.compatible(J.ctx):
            raise ContextMismatch(f"{fi} not in {J.ctx}")
        col = colon_element(base, fi) if fi else Ideal(J.ctx, [J.ctx.one()])
        for g in col.groebner().basis:
            if not base.contains(g):
                return False, RegularSequenceWitness(i, g)
        base = Ideal(J.ctx, base.gens + (fi,))
    if base.is_unit():
        return False, RegularSequenceWitness(len(f), J.ctx.one())
    return True, None


def annihilator(f: Polynomial, J: Ideal) -> Ideal:
    """Ann(f) in k[x]/J, i.e. J : f (the unit ideal when f is zero)."""
    if not f:
        return Ideal(J.ctx, [J.ctx.one()])
    return colon_element(J, f)


def is_zero_divisor(f: Polynomial, J: Ideal) -> bool:
    ann = annihilator(f, J)
    return not J.contains_ideal(ann)


def standard_monomials(gb: ReducedGB, ctx: RingContext, weights: Sequence[int], degree: int,
                       caps: Sequence[int]) -> np.ndarray:
    """Exponent rows of weighted degree ``degree`` (within ``caps``) not in LT(gb)."""
    cand = _kernels.enumerate_weighted(weights, degree, caps)
    lm = gb.leading_monomials()
    leads = np.array(lm, dtype=np.int64).reshape(len(lm), ctx.nvars)
    if not len(cand):
        return cand
    return cand[_kernels.standard_mask(cand, leads, ctx.nvars)]


def hilbert_function(I: Ideal, degrees: Iterable[int]) -> list[tuple[int, int]]:
    """dim_k (k[x]/I)_d for each d, all weights strictly positive."""
    ctx = I.ctx
    w = ctx.weights
    if any(x <= 0 for x in w):
        raise NonPositiveWeights(f"Hilbert function needs positive weights, got {dict(ctx.variables)}")
    gb = I.groebner()
    out = []
    for d in degrees:
        if d < 0:
            out.append((d, 0))
            continue
        caps = [d // x for x in w]
        out.append((d, int(len(standard_monomials(gb, ctx, w, d, caps)))))
    return out
