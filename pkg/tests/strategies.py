"""Hypothesis strategies shared by the property suites."""

from hypothesis import strategies as st

from reesblow.idealcore import Ideal
from reesblow.polyring import Polynomial


def monomials(nvars: int, max_degree: int):
    """Exponent tuples of total degree <= max_degree, drawn as multisets of variables."""
    def count(idx):
        e = [0] * nvars
        for i in idx:
            e[i] += 1
        return tuple(e)

    return st.lists(st.integers(0, nvars - 1), max_size=max_degree).map(count)


def polynomials(ctx, max_degree=3, max_terms=3, coeff=st.integers(-3, 3), min_terms=0):
    pairs = st.lists(st.tuples(monomials(ctx.nvars, max_degree), coeff), min_size=min_terms, max_size=max_terms)
    return pairs.map(lambda t: Polynomial.from_terms(ctx, t))


def ideals(ctx, max_gens=3, max_degree=3):
    gens = polynomials(ctx, max_degree, min_terms=1)
    return st.lists(gens, min_size=1, max_size=max_gens).map(lambda gs: Ideal(ctx, gs))
