"""Exact sparse polynomials over QQ or F_p with integer variable weights.

A polynomial is a dict ``{exponent tuple: coefficient}`` tied to a
:class:`RingContext`.  Rational coefficients are :class:`fractions.Fraction`
(or ``int``), prime-field coefficients are ``int`` residues in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    ContextMismatch,
    PolySyntaxError,
    UnknownVariable,
    ZeroCharacteristicDivision,
)

Exponent = tuple[int, ...]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``Field(0)`` is QQ, ``Field(p)`` is F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"F_p needs a prime modulus, got {p}")

    @classmethod
    def parse(cls, text: str) -> Field:
        text = text.strip()
        if text in ("QQ", "Q"):
            return QQ
        m = re.fullmatch(r"(?:Fp|GF|F):?(\d+)", text)
        if not m:
            raise ValueError(f"unknown field {text!r}; expected QQ or Fp:<p>")
        return cls(int(m.group(1)))

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    def __call__(self, value) -> Fraction | int:
        """Coerce an int, Fraction or ``"a/b"`` string into a field element."""
        if isinstance(value, str):
            value = Fraction(value)
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroCharacteristicDivision(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, c):
        p = self.characteristic
        if p == 0:
            if c == 0:
                raise ZeroCharacteristicDivision("division by zero")
            return 1 / Fraction(c)
        if c % p == 0:
            raise ZeroCharacteristicDivision(f"{c} is not invertible mod {p}")
        return pow(c, -1, p)


QQ = Field(0)


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block`` (front block dominates, grevlex inside)."""

    kind: str = "grevlex"
    front: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind != "block" and self.front:
            raise ValueError("only block orders carry a front block")
        object.__setattr__(self, "front", frozenset(self.front))

    @classmethod
    def block(cls, front: Iterable[str]) -> MonomialOrder:
        return cls("block", frozenset(front))

    def __str__(self) -> str:
        if self.kind == "block":
            return "block(" + ",".join(sorted(self.front)) + ")"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-a for a in reversed(e)))


@lru_cache(maxsize=None)
def order_key(names: tuple[str, ...], order: MonomialOrder) -> Callable[[Exponent], object]:
    """Sort key on exponent tuples; larger key means larger monomial."""
    if order.kind == "lex":
        return lambda e: e
    if order.kind == "grevlex":
        memo: dict = {}

        def key(e):
            k = memo.get(e)
            if k is None:
                k = memo[e] = _grevlex_key(e)
            return k

        return key
    front = [i for i, n in enumerate(names) if n in order.front]
    rest = [i for i, n in enumerate(names) if n not in order.front]
    memo = {}

    def block_key(e):
        k = memo.get(e)
        if k is None:
            k = memo[e] = (
                _grevlex_key(tuple(e[i] for i in front)),
                _grevlex_key(tuple(e[i] for i in rest)),
            )
        return k

    return block_key


@dataclass(frozen=True)
class RingContext:
    """Weighted polynomial ring k[x_1..x_n] with an active monomial order."""

    field: Field
    variables: tuple[tuple[str, int], ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        variables = tuple((str(n), int(w)) for n, w in self.variables)
        object.__setattr__(self, "variables", variables)
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", n):
                raise ValueError(f"invalid variable name {n!r}")
        unknown = set(self.order.front) - set(names)
        if unknown:
            raise ValueError(f"block order names unknown variables {sorted(unknown)}")

    @classmethod
    def make(cls, names: Sequence[str] | str, weights: Sequence[int] | Mapping[str, int] | None = None,
             field: Field = QQ, order: MonomialOrder | str = GREVLEX) -> RingContext:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        if weights is None:
            weights = [0] * len(names)
        elif isinstance(weights, Mapping):
            weights = [weights.get(n, 0) for n in names]
        if isinstance(order, str):
            order = MonomialOrder(order)
        return cls(field, tuple(zip(names, weights)), order)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None

    def weight(self, name: str) -> int:
        return self.variables[self.index(name)][1]

    def key(self, order: MonomialOrder | None = None):
        return order_key(self.names, order or self.order)

    def compatible(self, other: RingContext) -> bool:
        return self is other or (self.field == other.field and self.variables == other.variables)

    def with_order(self, order: MonomialOrder | str) -> RingContext:
        if isinstance(order, str):
            order = MonomialOrder(order)
        return RingContext(self.field, self.variables, order)

    def restrict(self, keep: Iterable[str]) -> RingContext:
        """Subring on ``keep`` (in this ring's variable order)."""
        keep = set(keep)
        variables = tuple(v for v in self.variables if v[0] in keep)
        order = self.order
        if order.kind == "block":
            front = order.front & keep
            order = MonomialOrder.block(front) if front else GREVLEX
        return RingContext(self.field, variables, order)

    def extend(self, variables: Sequence[tuple[str, int]], front: bool = False,
               order: MonomialOrder | None = None) -> RingContext:
        new = tuple(variables)
        allv = new + self.variables if front else self.variables + new
        return RingContext(self.field, allv, order or self.order)

    def fresh(self, base: str) -> str:
        return fresh_name(base, self.names)

    def tinv(self) -> str | None:
        """Name of the unique weight -1 variable (the one realizing t^-1), if any."""
        neg = [n for n, w in self.variables if w == -1]
        if "u" in neg:
            return "u"
        return neg[0] if len(neg) == 1 else None

    # element constructors
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> list[Polynomial]:
        return [self.var(n) for n in self.names]

    def monomial(self, exponent: Sequence[int], coeff=1) -> Polynomial:
        c = self.field(coeff)
        return Polynomial(self, {tuple(int(a) for a in exponent): c} if c else {})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def __str__(self) -> str:
        vs = ",".join(f"{n}:{w}" for n, w in self.variables)
        return f"{self.field}[{vs}] ({self.order})"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


class _ZeroDegree:
    """Degree of the zero polynomial: homogeneous of every degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DEGREE_OF_ZERO"


DEGREE_OF_ZERO = _ZeroDegree()


@dataclass(frozen=True)
class NonHomogeneous:
    degrees: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def _check_ctx(a: RingContext, b: RingContext):
    if not a.compatible(b):
        raise ContextMismatch(f"{a} vs {b}")


class Polynomial:
    """Immutable sparse polynomial.  Build via :class:`RingContext` helpers or arithmetic."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: RingContext, terms: Mapping[Exponent, object] | None = None):
        self.ctx = ctx
        # trusted fast path: coefficients must already be field elements
        self.terms: dict[Exponent, object] = {e: c for e, c in terms.items() if c} if terms else {}
        self._hash = None

    @classmethod
    def from_terms(cls, ctx: RingContext, terms: Iterable[tuple[Sequence[int], object]]) -> Polynomial:
        acc: dict[Exponent, object] = {}
        fld = ctx.field
        for e, c in terms:
            e = tuple(e)
            acc[e] = acc.get(e, 0) + fld(c)
        p = ctx.field.characteristic
        if p:
            acc = {e: c % p for e, c in acc.items()}
        return cls(ctx, {e: c for e, c in acc.items() if c})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ctx.nvars}

    def constant_value(self):
        return self.terms.get((0,) * self.ctx.nvars, 0)

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Exponent, object]]:
        key = self.ctx.key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ctx.key(order))

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self) -> set[str]:
        names = self.ctx.names
        return {names[i] for e in self.terms for i, a in enumerate(e) if a}

    def weighted_degree(self):
        return weighted_degree(self)

    def is_homogeneous(self) -> bool:
        return not isinstance(weighted_degree(self), NonHomogeneous)

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self.terms:
            return self
        inv = self.ctx.field.inv(self.leading_coefficient(order))
        return self._scale(inv)

    def _scale(self, c) -> Polynomial:
        p = self.ctx.field.characteristic
        if p:
            return Polynomial(self.ctx, {e: v * c % p for e, v in self.terms.items() if v * c % p})
        return Polynomial(self.ctx, {e: v * c for e, v in self.terms.items()} if c else {})

    # arithmetic
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            _check_ctx(self.ctx, other.ctx)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, _add(self.terms, other.terms, 1, self.ctx.field.characteristic))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self._scale(self.ctx.field(-1))

    def __pos__(self) -> Polynomial:
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, _add(self.terms, other.terms, -1, self.ctx.field.characteristic))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(self.ctx.field(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ctx, _mul(self.terms, other.terms, self.ctx.field.characteristic))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(self.ctx.field.inv(self.ctx.field(other)))
        return NotImplemented

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx.compatible(other.ctx) and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ctx.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.variables, frozenset(self.terms.items())))
        return self._hash

    # ring maps
    def evaluate(self, images: Mapping[str, Polynomial], target: RingContext) -> Polynomial:
        """Image under the ring map sending each variable to ``images[name]``.

        Variables missing from ``images`` map to the same-named variable of ``target``.
        """
        gens = []
        for n in self.ctx.names:
            img = images.get(n)
            if img is None:
                img = target.var(n)
            elif not isinstance(img, Polynomial):
                img = target.const(img)
            else:
                _check_ctx(img.ctx, target)
            gens.append(img)
        powers: dict[tuple[int, int], Polynomial] = {}
        acc: dict[Exponent, object] = {}
        p = target.field.characteristic
        for e, c in self.terms.items():
            term = {(0,) * target.nvars: target.field(c)}
            for i, a in enumerate(e):
                if a:
                    pw = powers.get((i, a))
                    if pw is None:
                        pw = powers[(i, a)] = gens[i] ** a
                    term = _mul(term, pw.terms, p)
                    if not term:
                        break
            acc = _add(acc, term, 1, p)
        return Polynomial(target, acc)

    def to_context(self, target: RingContext) -> Polynomial:
        """Re-embed by variable name; variables absent from ``target`` must not occur."""
        idx = []
        for i, n in enumerate(self.ctx.names):
            idx.append(target.names.index(n) if n in target.names else None)
        out: dict[Exponent, object] = {}
        for e, c in self.terms.items():
            new = [0] * target.nvars
            for i, a in enumerate(e):
                if a:
                    j = idx[i]
                    if j is None:
                        raise UnknownVariable(self.ctx.names[i])
                    new[j] = a
            out[tuple(new)] = target.field(c) if target.field != self.ctx.field else c
        return Polynomial(target, {e: c for e, c in out.items() if c})

    def substitute(self, name: str, value) -> Polynomial:
        img = value if isinstance(value, Polynomial) else self.ctx.const(value)
        return self.evaluate({name: img}, self.ctx)

    # printing
    def format(self, order: MonomialOrder | None = None) -> str:
        return format_terms(self.ctx, self.sorted_terms(order))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


def _add(a: Mapping, b: Mapping, sign: int, p: int) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + (c if sign == 1 else -c)
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: Mapping, b: Mapping, p: int) -> dict:
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    if p:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def format_coefficient(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_monomial(names: Sequence[str], e: Exponent) -> str:
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def format_terms(ctx: RingContext, terms: Iterable[tuple[Exponent, object]]) -> str:
    """Canonical text for terms already listed in the desired order."""
    out = []
    for e, c in terms:
        neg = c < 0
        mag = -c if neg else c
        mono = format_monomial(ctx.names, e)
        if not mono:
            body = format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_coefficient(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out) or "0"


def weighted_degree(p: Polynomial):
    """Common weighted degree of all terms, ``DEGREE_OF_ZERO`` or :class:`NonHomogeneous`."""
    if not p.terms:
        return DEGREE_OF_ZERO
    w = p.ctx.weights
    degs = {sum(a * b for a, b in zip(e, w)) for e in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return NonHomogeneous(tuple(sorted(degs)))


def poly_arith(op: str, a: Polynomial, b) -> Polynomial:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


# --- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise PolySyntaxError(f"unexpected character {ch!r}", text, m.start(3))
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None:
            raise PolySyntaxError("unexpected end of expression", self.text, len(self.text))
        if value is not None and tok[1] != value:
            raise PolySyntaxError(f"expected {value!r}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolySyntaxError("empty expression", self.text, 0)
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise PolySyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return p

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok and tok[1] in "+-" and tok[0] == "op":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            t = self.term()
            acc = acc + t if tok[1] == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "*/":
            self.take()
            if tok[1] == "*":
                acc = acc * self.factor()
            else:
                d = self.take()
                if d[0] != "int":
                    raise PolySyntaxError("only integer denominators are allowed", self.text, d[2])
                den = int(d[1])
                p = self.ctx.field.characteristic
                if den == 0 or (p and den % p == 0):
                    raise ZeroCharacteristicDivision(f"denominator {den} vanishes in {self.ctx.field}")
                acc = acc / den
        return acc

    def factor(self) -> Polynomial:
        tok = self.peek()
        base_is_t = tok is not None and tok[0] == "ident" and tok[1] == "t" and "t" not in self.ctx.names
        base = None if base_is_t else self.atom()
        if base_is_t:
            self.take()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            neg = False
            if (s := self.peek()) and s[1] == "-":
                self.take()
                neg = True
            n = self.take()
            if n[0] != "int":
                raise PolySyntaxError("exponent must be a natural number", self.text, n[2])
            k = int(n[1])
            if base_is_t:
                if not neg:
                    raise UnknownVariable("t")
                return self._tinv() ** k
            if neg:
                raise PolySyntaxError("negative exponents are only allowed in t^-n", self.text, n[2])
            return base ** k
        if base_is_t:
            raise UnknownVariable("t")
        return base

    def _tinv(self) -> Polynomial:
        name = self.ctx.tinv()
        if name is None:
            raise UnknownVariable("t^-1")
        return self.ctx.var(name)

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return self.ctx.const(int(value))
        if kind == "ident":
            if value not in self.ctx.names:
                raise UnknownVariable(value)
            return self.ctx.var(value)
        if value == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise PolySyntaxError(f"unexpected {value!r}", self.text, pos)


def parse_polynomial(text: str, ctx: RingContext) -> Polynomial:
    """Parse ``text`` in ``ctx``.

    Grammar::

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := factor (('*' factor) | ('/' nat))*
        factor := atom ('^' nat)? | 't' '^' '-' nat
        atom   := nat | ident | '(' expr ')'

    ``t^-n`` is accepted as an alias for ``u^n`` where ``u`` is the weight -1 variable.
    """
    return _Parser(text, ctx).parse()


def parse_list(text: str, ctx: RingContext) -> list[Polynomial]:
    """Parse ``"[p1, p2, ...]"`` (brackets optional)."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise PolySyntaxError("unterminated list", text, len(text))
        text = text[1:-1]
    if not text.strip():
        return []
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [parse_polynomial(s, ctx) for s in parts]
