"""Buchberger's algorithm on raw term dicts.

Polynomials here are ``{exponent: coeff}`` dicts; ``key`` is a monomial-order
sort key and ``p`` the field characteristic (0 for QQ).  Everything is
deterministic: pair selection uses (sugar, degree of lcm, i, j).
"""

from __future__ import annotations

from fractions import Fraction


def _inv(c, p: int):
    if p:
        return pow(c, -1, p)
    return 1 / Fraction(c)


def divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def leading(f: dict, key):
    return max(f, key=key)


def make_monic(f: dict, key, p: int) -> dict:
    lc = f[leading(f, key)]
    if lc == 1:
        return _normalize(f, p) if p else f
    inv = _inv(lc, p)
    if p:
        return {e: c * inv % p for e, c in f.items()}
    return {e: c * inv for e, c in f.items()}


def reduce_full(f: dict, basis: list[tuple[tuple, dict]], key, p: int) -> dict:
    """Remainder of ``f`` on division by monic ``basis`` (pairs of (lm, poly))."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                get = f.get
                for e, gc in g.items():
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = get(e2, 0) - c * gc
                    if p:
                        v %= p
                    if v:
                        f[e2] = v
                    else:
                        del f[e2]
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def spoly(f: dict, lf, g: dict, lg, p: int = 0) -> dict:
    """S-polynomial of monic ``f`` and ``g`` with leading monomials ``lf``, ``lg``."""
    l = lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(l, lf))
    sg = tuple(x - y for x, y in zip(l, lg))
    out: dict = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, sf))] = c
    for e, c in g.items():
        e2 = tuple(x + y for x, y in zip(e, sg))
        v = out.get(e2, 0) - c
        if p:
            v %= p
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def _normalize(f: dict, p: int) -> dict:
    if p:
        return {e: c % p for e, c in f.items() if c % p}
    return {e: c for e, c in f.items() if c}


def _degree(f: dict) -> int:
    return max(sum(e) for e in f)


def buchberger(polys: list[dict], key, p: int) -> list[dict]:
    """Reduced Groebner basis, sorted by descending leading monomial.

    Pairs are processed by sugar degree (the degree the S-polynomial would
    have if the input were homogenized), which keeps elimination orders on
    inhomogeneous input from chasing high-degree intermediate terms.
    """
    G: list[dict] = []
    LM: list[tuple] = []
    sugar: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}

    def add(h: dict, sg: int):
        h = make_monic(h, key, p)
        lh = leading(h, key)
        k = len(G)
        G.append(h)
        LM.append(lh)
        sugar.append(sg)
        for i in range(k):
            l = lcm(LM[i], lh)
            ps = max(sugar[i] + sum(l) - sum(LM[i]), sg + sum(l) - sum(lh))
            pairs[(i, k)] = (ps, sum(l), i, k)

    for f in polys:
        f = _normalize(f, p)
        if not f:
            continue
        r = reduce_full(f, list(zip(LM, G)), key, p)
        if r:
            if all(e == (0,) * len(e) for e in r):
                return [{(0,) * len(next(iter(r))): 1}]
            add(r, _degree(f))

    while pairs:
        i, j = min(pairs, key=pairs.__getitem__)
        ps = pairs.pop((i, j))[0]
        li, lj = LM[i], LM[j]
        if coprime(li, lj):
            continue
        l = lcm(li, lj)
        if _chain_criterion(i, j, l, LM, pairs):
            continue
        s = spoly(G[i], li, G[j], lj, p)
        if not s:
            continue
        r = reduce_full(s, list(zip(LM, G)), key, p)
        if r:
            if all(not any(e) for e in r):
                return [{next(iter(r)): 1}]
            add(r, ps)

    return interreduce(G, LM, key, p)


def _chain_criterion(i, j, l, LM, pairs) -> bool:
    for k in range(len(LM)):
        if k == i or k == j:
            continue
        if not divides(LM[k], l):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def interreduce(G: list[dict], LM: list[tuple], key, p: int) -> list[dict]:
    keep = []
    for i, li in enumerate(LM):
        redundant = False
        for j, lj in enumerate(LM):
            if j == i:
                continue
            if divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    basis = [(LM[i], G[i]) for i in keep]
    out = []
    for idx, (lm, g) in enumerate(basis):
        others = [b for k, b in enumerate(basis) if k != idx]
        tail = dict(g)
        del tail[lm]
        r = reduce_full(tail, others, key, p)
        r[lm] = g[lm]
        out.append(r)
    out.sort(key=lambda f: key(leading(f, key)), reverse=True)
    return out


def is_groebner(G: list[dict], key, p: int) -> bool:
    """Every S-polynomial of ``G`` reduces to zero (independent of criteria)."""
    G = [make_monic(g, key, p) for g in G if g]
    LM = [leading(g, key) for g in G]
    basis = list(zip(LM, G))
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            s = spoly(G[i], LM[i], G[j], LM[j], p)
            if s and reduce_full(s, basis, key, p):
                return False
    return True
