"""Independent reference computations through sympy."""

import sympy

from reesblow.polyring import Polynomial, RingContext


def symbols(ctx: RingContext):
    return sympy.symbols(list(ctx.names)) if ctx.nvars else ()


def to_sympy(p: Polynomial):
    syms = symbols(p.ctx)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, a in zip(syms, e):
            term *= s ** a
        expr += term
    return expr


def _canon(expr, syms, modulus):
    """Monic term set; coefficients as Fractions (QQ) or residues in [0, p)."""
    poly = sympy.Poly(expr, *syms, domain=sympy.GF(modulus) if modulus else sympy.QQ)
    poly = poly.monic()
    terms = []
    for mono, c in poly.terms():
        if modulus:
            c = int(poly.domain.to_sympy(c)) % modulus
        else:
            c = sympy.Rational(c)
        terms.append((mono, c))
    return tuple(sorted(terms))


def reduced_gb(polys, ctx: RingContext, order: str = "grevlex", modulus: int | None = None) -> set:
    syms = symbols(ctx)
    exprs = [to_sympy(p) for p in polys]
    if not exprs:
        return set()
    opts = {"order": order}
    if modulus:
        opts["modulus"] = modulus
    G = sympy.groebner(exprs, *syms, **opts)
    return {_canon(g, syms, modulus) for g in G.exprs}


def canon(polys, modulus: int | None = None) -> set:
    polys = list(polys)
    if not polys:
        return set()
    syms = symbols(polys[0].ctx)
    return {_canon(to_sympy(p), syms, modulus) for p in polys}
