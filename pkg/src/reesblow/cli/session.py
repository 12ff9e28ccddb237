"""Named bindings and one handler per script command."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .. import blowup, graded, idealcore, rees
from ..errors import ReesError
from ..graded import GradedAlgebra, ProjAtlas
from ..idealcore import Ideal
from ..polyring import Field, MonomialOrder, Polynomial, RingContext, parse_list
from .script import ScriptError, Statement, split_statements

SCHEMA = "rees-blowup/1"


@dataclass
class Options:
    field: str = "QQ"
    order: str = "grevlex"
    bound: int | None = None
    timing: bool = False
    all_perms: bool = False


@dataclass
class IdealBinding:
    """An ideal of A = k[x]/J_A given by its own generators."""

    ring: GradedAlgebra
    gens: tuple[Polynomial, ...]

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring.ctx, self.ring.ideal.gens + self.gens)


@dataclass
class OutputRecord:
    line: int
    command: str
    kind: str
    payload: dict
    text: list[str]
    name: str | None = None
    status: str = "ok"
    timing: float | None = None


def _bool(b) -> str:
    return "true" if b else "false"


def _strs(ps) -> list[str]:
    return [str(p) for p in ps]


def _weights(ctx: RingContext) -> dict[str, int]:
    return dict(ctx.variables)


def _ring_fields(ctx: RingContext) -> dict:
    return {"weights": _weights(ctx), "order": str(ctx.order)}


def _algebra_payload(kind: str, name: str | None, B: GradedAlgebra, reports: dict | None = None) -> dict:
    return {
        "kind": kind,
        "name": name,
        "field": str(B.ctx.field),
        "generators": B.ideal.groebner().strings() if B.ideal.gens else [],
        **_ring_fields(B.ctx),
        "reports": reports or {},
    }


def _presentation_text(B: GradedAlgebra, gens: list[str]) -> str:
    vs = ", ".join(f"{n}:{w}" for n, w in B.ctx.variables)
    rel = f" / ({', '.join(gens)})" if gens else ""
    return f"{B.ctx.field}[{vs}]{rel}"


def _chart_payload(c: graded.Chart) -> dict:
    sub = {v: str(p) for v, p in c.substitution.items() if v != c.generator}
    sub[c.generator] = str(c.substitution[c.generator])
    out = {
        "kind": "chart",
        "generator": c.generator,
        "substitution": sub,
        "ideal": c.ideal_strings(),
        **_ring_fields(c.ring.ctx),
        "zero_ring": c.is_zero,
        "stabilized_at": c.stabilized_at,
    }
    if c.exceptional is not None:
        out["exceptional"] = str(c.exceptional)
    return out


def _atlas_payload(atlas: ProjAtlas, name: str | None) -> dict:
    if atlas.empty and not atlas.charts:
        return {"kind": "atlas", "charts": [], "empty": True}
    return {
        "kind": "atlas",
        "name": name,
        "generators": list(atlas.generators),
        "charts": [_chart_payload(c) for c in atlas.charts],
        "transitions": {f"{i}->{j}": {k: str(m) for k, m in t.items()} for (i, j), t in sorted(atlas.transitions.items())},
        "empty": atlas.empty,
        "reports": _jsonable(atlas.reports),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, graded.GenerationReport):
        return {"ok": obj.ok, "bound": obj.bound, "failures": _jsonable(obj.failures)}
    return str(obj)


def _chart_text(c: graded.Chart) -> list[str]:
    sub = ", ".join(f"{k} -> {v}" for k, v in _chart_payload(c)["substitution"].items())
    lines = [f"chart {c.generator}: ideal [{', '.join(c.ideal_strings())}]", f"  substitution: {sub}"]
    if c.exceptional is not None:
        lines.append(f"  exceptional: {c.exceptional}")
    if c.is_zero:
        lines.append("  zero ring")
    return lines


def _atlas_text(atlas: ProjAtlas) -> list[str]:
    lines = [f"atlas: {len(atlas.charts)} chart(s)"]
    for c in atlas.charts:
        lines.extend(_chart_text(c))
    for (i, j), t in sorted(atlas.transitions.items()):
        body = ", ".join(f"{k} -> {m}" for k, m in t.items()) or "identity"
        lines.append(f"transition {atlas.generators[i]} -> {atlas.generators[j]}: {body}")
    lines.append(f"empty: {_bool(atlas.empty)}")
    return lines


class Session:
    """Interprets statements against a table of immutable named bindings."""

    def __init__(self, options: Options | None = None):
        self.options = options or Options()
        self.bindings: dict[str, dict[str, object]] = {}
        self.log: list[Statement] = []
        self.handlers: dict[str, Callable] = {
            "ring": self.cmd_ring, "ideal": self.cmd_ideal, "gb": self.cmd_gb, "nf": self.cmd_nf,
            "member": self.cmd_member, "quotient": self.cmd_quotient, "intersect": self.cmd_intersect,
            "saturate": self.cmd_saturate, "eliminate": self.cmd_eliminate, "kernel": self.cmd_kernel,
            "regseq": self.cmd_regseq, "ann": self.cmd_ann, "hilbert": self.cmd_hilbert, "graded": self.cmd_graded,
            "piece": self.cmd_piece, "split": self.cmd_split, "chart": self.cmd_chart,
            "veronese": self.cmd_veronese, "gendeg1": self.cmd_gendeg1, "twist": self.cmd_twist,
            "rees": self.cmd_rees, "cone": self.cmd_cone, "regularize": self.cmd_regularize,
            "treg": self.cmd_treg, "compare-classical": self.cmd_compare, "naturality": self.cmd_naturality,
            "nonneg": self.cmd_nonneg, "proj": self.cmd_proj, "blowup": self.cmd_blowup,
            "exceptional": self.cmd_exceptional, "empty": self.cmd_empty, "deform": self.cmd_deform,
        }

    # --- driving -------------------------------------------------------------

    def run(self, source: str) -> list[OutputRecord]:
        return [self.execute(s) for s in split_statements(source)]

    def iter_run(self, source: str):
        for s in split_statements(source):
            yield self.execute(s)

    def execute(self, stmt: Statement) -> OutputRecord:
        toks = list(stmt.tokens)
        bind = None
        if len(toks) >= 3 and toks[1] == "=" and toks[0] not in self.handlers:
            bind, toks = toks[0], toks[2:]
        cmd, args = toks[0], toks[1:]
        handler = self.handlers.get(cmd)
        if handler is None:
            raise ScriptError(stmt.line, f"unknown command {cmd!r}")
        start = time.perf_counter()
        try:
            rec = handler(args, bind)
        except ScriptError:
            raise
        except (ReesError, ValueError, KeyError, ZeroDivisionError, IndexError) as exc:
            msg = str(exc) if not isinstance(exc, KeyError) or isinstance(exc, ReesError) else f"unknown name {exc}"
            raise ScriptError(stmt.line, f"{cmd}: {msg}") from exc
        rec.line = stmt.line
        rec.command = stmt.text
        if self.options.timing:
            rec.timing = round(time.perf_counter() - start, 6)
        self.log.append(stmt)
        return rec

    def replay_source(self) -> str:
        """The executed statements, each on its original line, so replay keeps line numbers."""
        by_line: dict[int, list[str]] = {}
        for s in self.log:
            by_line.setdefault(s.line, []).append(s.text)
        last = max(by_line, default=0)
        return "".join("; ".join(by_line.get(n, [])) + "\n" for n in range(1, last + 1))

    # --- bindings --------------------------------------------------------------

    def _bind(self, name: str | None, kind: str, value) -> None:
        if name is None:
            return
        table = self.bindings.setdefault(kind, {})
        if name in table:
            raise ValueError(f"{kind} {name!r} is already bound")
        table[name] = value

    def _get(self, name: str, *kinds: str):
        for k in kinds:
            if name in self.bindings.get(k, {}):
                return self.bindings[k][name]
        raise ValueError(f"no {' or '.join(kinds)} named {name!r}")

    def _algebra(self, name: str) -> GradedAlgebra:
        obj = self._get(name, "ring", "rees")
        return obj.algebra if isinstance(obj, rees.ReesPresentation) else obj

    def _ideal_binding(self, tok: str, ring: GradedAlgebra | None = None) -> IdealBinding:
        if tok.startswith("["):
            if ring is None:
                raise ValueError(f"a literal list {tok} needs a ring")
            return IdealBinding(ring, tuple(parse_list(tok, ring.ctx)))
        obj = self._get(tok, "ideal", "ring")
        if isinstance(obj, IdealBinding):
            return obj
        return IdealBinding(obj, ())

    def _ideal(self, tok: str, ring: GradedAlgebra | None = None) -> Ideal:
        return self._ideal_binding(tok, ring).ideal

    def _bound(self, args: list[str], i: int, default: int) -> int:
        if len(args) > i:
            return int(args[i])
        return self.options.bound if self.options.bound is not None else default

    def _data(self, args: list[str]) -> rees.ImmersionData:
        if len(args) == 1:
            return self._get(args[0], "rees").data
        if len(args) != 2:
            raise ValueError("expected a Rees name or a ring and an ideal")
        A = self._get(args[0], "ring")
        ib = self._ideal_binding(args[1], A)
        if ib.ring is not A:
            raise ValueError(f"{args[1]} is not an ideal of {args[0]}")
        return rees.ImmersionData(A, ib.gens)

    @staticmethod
    def _poly(ctx: RingContext, args: list[str]) -> Polynomial:
        if not args:
            raise ValueError("missing polynomial")
        return ctx.parse(" ".join(args))

    def _rec(self, kind: str, payload: dict, text: list[str], name: str | None = None) -> OutputRecord:
        return OutputRecord(0, "", kind, payload, text, name)

    # --- commands: rings and ideals -------------------------------------------------

    def cmd_ring(self, args, bind):
        if not args:
            raise ValueError("ring needs a name")
        name, rest = args[0], args[1:]
        fld = Field.parse(self.options.field)
        if rest and not rest[0].startswith("["):
            fld = Field.parse(rest.pop(0))
        if not rest or not rest[0].startswith("["):
            raise ValueError("ring needs a variable list like [x:0, y:0]")
        names, weights = [], []
        for item in rest.pop(0)[1:-1].split(","):
            item = item.strip()
            if not item:
                continue
            n, _, w = item.partition(":")
            names.append(n.strip())
            weights.append(int(w) if w else 0)
        order = self.options.order
        relations = "[]"
        while rest:
            key = rest.pop(0)
            if key == "order" and rest:
                order = rest.pop(0)
            elif key == "mod" and rest:
                relations = rest.pop(0)
            else:
                raise ValueError(f"unexpected {key!r} in ring declaration")
        ctx = RingContext.make(names, weights, fld, MonomialOrder(order))
        B = GradedAlgebra(ctx, parse_list(relations, ctx), name)
        self._bind(name, "ring", B)
        payload = _algebra_payload("ring", name, B)
        return self._rec("ring", payload, [f"{name} = {_presentation_text(B, payload['generators'])}"], name)

    def cmd_ideal(self, args, bind):
        if len(args) != 5 or args[1] != "in" or args[3] != "=":
            raise ValueError("expected: ideal NAME in RING = [generators]")
        name, A = args[0], self._get(args[2], "ring")
        gens = tuple(parse_list(args[4], A.ctx))
        ib = IdealBinding(A, gens)
        self._bind(name, "ideal", ib)
        payload = {"kind": "ideal", "name": name, "ring": args[2], "generators": _strs(gens),
                   **_ring_fields(A.ctx), "reports": {}}
        return self._rec("ideal", payload, [f"{name} = ({', '.join(_strs(gens))}) in {args[2]}"], name)

    def _ideal_result(self, kind: str, I: Ideal, bind, label: str, reports: dict | None = None,
                      ring: GradedAlgebra | None = None) -> OutputRecord:
        gens = I.groebner().strings()
        if bind is not None:
            A = ring or GradedAlgebra(I.ctx, [], None)
            self._bind(bind, "ideal", IdealBinding(A, tuple(I.groebner().basis)))
        payload = {"kind": kind, "name": bind, "generators": gens, **_ring_fields(I.ctx), "reports": reports or {}}
        text = [f"{label} = [{', '.join(gens)}]"]
        for k, v in (reports or {}).items():
            text.append(f"{k}: {_fmt(v)}")
        return self._rec(kind, payload, text, bind)

    def cmd_gb(self, args, bind):
        I = self._ideal(args[0])
        order = MonomialOrder(args[1]) if len(args) > 1 else None
        G = I.groebner(order)
        payload = {"kind": "gb", "name": bind, "generators": G.strings(), **_ring_fields(I.ctx),
                   "reports": {"order": str(G.order)}}
        return self._rec("gb", payload, [f"gb({args[0]}) = [{', '.join(G.strings())}]"], bind)

    def cmd_nf(self, args, bind):
        I = self._ideal(args[0])
        r = I.normal_form(self._poly(I.ctx, args[1:]))
        payload = {"kind": "nf", "name": bind, "generators": [str(r)], **_ring_fields(I.ctx), "reports": {}}
        return self._rec("nf", payload, [f"nf = {r}"], bind)

    def cmd_member(self, args, bind):
        I = self._ideal(args[0])
        p = self._poly(I.ctx, args[1:])
        ok = I.contains(p)
        payload = {"kind": "member", "name": bind, "generators": [str(p)], **_ring_fields(I.ctx),
                   "reports": {"member": ok}}
        return self._rec("member", payload, [f"member: {_bool(ok)}"], bind)

    def _pair(self, args) -> tuple[IdealBinding, Ideal]:
        a = self._ideal_binding(args[0])
        return a, self._ideal(args[1], a.ring)

    def cmd_quotient(self, args, bind):
        a, J = self._pair(args)
        return self._ideal_result("ideal", idealcore.quotient(a.ideal, J), bind, f"{args[0]} : {args[1]}", ring=a.ring)

    def cmd_intersect(self, args, bind):
        a, J = self._pair(args)
        return self._ideal_result("ideal", idealcore.intersection(a.ideal, J), bind, f"{args[0]} ∩ {args[1]}",
                                  ring=a.ring)

    def cmd_saturate(self, args, bind):
        a = self._ideal_binding(args[0])
        f = self._poly(a.ring.ctx, args[1:])
        S, steps = idealcore.saturation(a.ideal, f)
        return self._ideal_result("ideal", S, bind, f"{args[0]} : ({f})^inf", {"stabilized_at": steps}, ring=a.ring)

    def cmd_eliminate(self, args, bind):
        a = self._ideal_binding(args[0])
        vs = [v.strip() for v in args[1].strip("[]").split(",") if v.strip()] if len(args) > 1 else []
        E = idealcore.eliminate(a.ideal, vs)
        return self._ideal_result("ideal", E, bind, f"{args[0]} ∩ k[{', '.join(E.ctx.names)}]")

    def cmd_kernel(self, args, bind):
        if len(args) != 3:
            raise ValueError("expected: kernel SOURCE TARGET [images]")
        S, T = self._get(args[0], "ring"), self._get(args[1], "ring")
        images = parse_list(args[2], T.ctx)
        if len(images) != S.ctx.nvars:
            raise ValueError(f"{args[0]} has {S.ctx.nvars} variables but {len(images)} images were given")
        K = idealcore.map_kernel(S.ctx, images, T.ctx, T.ideal)
        return self._ideal_result("ideal", K, bind, f"ker({args[0]} -> {args[1]})", ring=GradedAlgebra(S.ctx, [], None))

    def cmd_regseq(self, args, bind):
        A = self._get(args[0], "ring")
        f = self._ideal_binding(args[1], A).gens
        ok, wit = idealcore.regular_sequence_test(list(f), A.ideal)
        reports = {"regular": ok}
        text = [f"sequence: [{', '.join(_strs(f))}]", f"regular sequence: {_bool(ok)}"]
        if wit is not None:
            reports["witness"] = {"index": wit.index + 1, "element": str(wit.element)}
            if wit.index < len(f):
                prev = ", ".join(f"f{i + 1}" for i in range(wit.index)) or "0"
                text.append(f"witness: ({wit.element}) * f{wit.index + 1} lies in ({prev}) but {wit.element} does not")
            else:
                text.append("witness: the quotient by the whole sequence is the zero ring")
        if self.options.all_perms:
            perms = {}
            for perm in itertools.permutations(range(len(f))):
                label = ",".join(str(i + 1) for i in perm)
                perms[label] = idealcore.regular_sequence_test([f[i] for i in perm], A.ideal)[0]
                text.append(f"order ({label}): {_bool(perms[label])}")
            reports["permutations"] = perms
        payload = {"kind": "regseq", "name": bind, "generators": _strs(f), **_ring_fields(A.ctx), "reports": reports}
        return self._rec("regseq", payload, text, bind)

    def cmd_ann(self, args, bind):
        A = self._get(args[0], "ring")
        f = self._poly(A.ctx, args[1:])
        N = idealcore.annihilator(f, A.ideal)
        zd = idealcore.is_zero_divisor(f, A.ideal)
        return self._ideal_result("ideal", N, bind, f"ann({f})", {"zero_divisor": zd}, ring=A)

    # --- graded algebras ---------------------------------------------------------------

    def cmd_hilbert(self, args, bind):
        B = graded.drop_vanishing_variables(self._algebra(args[0]))
        top = self._bound(args, 1, 8)
        rows = graded.hilbert_function(B, range(top + 1))
        payload = _algebra_payload("hilbert", bind, B, {"hilbert": {str(d): h for d, h in rows}})
        text = [f"presented on [{', '.join(B.ctx.names)}]"] + [f"H({d}) = {h}" for d, h in rows]
        return self._rec("hilbert", payload, text, bind)

    def cmd_graded(self, args, bind):
        B = self._algebra(args[0])
        rep = {"n_graded": B.is_n_graded, "zero_ring": B.is_zero_ring, "positive": B.positive_variables(),
               "degree_zero": B.degree_zero_variables()}
        payload = _algebra_payload("graded", args[0], B, rep)
        text = [f"{args[0]}: relations [{', '.join(payload['generators'])}]",
                f"N-graded: {_bool(B.is_n_graded)}", f"zero ring: {_bool(B.is_zero_ring)}"]
        return self._rec("graded", payload, text, args[0])

    def cmd_piece(self, args, bind):
        B = self._algebra(args[0])
        d = int(args[1])
        nb = int(args[2]) if len(args) > 2 else None
        P = graded.graded_piece_basis(B, d, nb)
        payload = {"kind": "piece", "name": bind, "generators": P.strings(), **_ring_fields(B.ctx),
                   "reports": {"degree": d, "dimension": len(P), "bound": nb}}
        return self._rec("piece", payload, [f"B_{d} basis: [{', '.join(P.strings())}]", f"dimension: {len(P)}"], bind)

    def cmd_split(self, args, bind):
        B = self._algebra(args[0])
        top = self._bound(args, 1, 6)
        rows = graded.split_dimension_check(B, top)
        rep = {str(r.degree): {"B": r.dim_B, "B0": r.dim_B0, "Bplus": r.dim_Bplus, "ok": r.ok} for r in rows}
        payload = _algebra_payload("split", bind, B, {"rows": rep, "ok": all(r.ok for r in rows)})
        text = [f"d={r.degree}: {r.dim_B} = {r.dim_B0} + {r.dim_Bplus} {'ok' if r.ok else 'FAIL'}" for r in rows]
        return self._rec("split", payload, text, bind)

    def cmd_chart(self, args, bind):
        B = self._algebra(args[0])
        f = self._poly(B.ctx, args[1:])
        c = graded.homogeneous_localization_chart(B, f)
        chk = graded.verify_localization_chart(c.source, c)
        self._bind(bind, "chart", c)
        payload = _chart_payload(c)
        payload["name"] = bind
        payload["reports"] = {"localization_verified": chk.ok}
        return self._rec("chart", payload, _chart_text(c) + [f"localization verified: {_bool(chk.ok)}"], bind)

    def cmd_veronese(self, args, bind):
        B = self._algebra(args[0])
        delta = int(args[1])
        V = graded.veronese(B, delta)
        self._bind(bind, "ring", V)
        payload = _algebra_payload("ring", bind, V, {"images": V.meta["images"], "delta": delta})
        text = [f"veronese({args[0]}, {delta}): relations [{', '.join(payload['generators'])}]"]
        text += [f"  {k} -> {v}" for k, v in V.meta["images"].items()]
        return self._rec("ring", payload, text, bind)

    def cmd_gendeg1(self, args, bind):
        B = self._algebra(args[0])
        rep = graded.generated_in_degree_one(B, self._bound(args, 1, 6))
        payload = _algebra_payload("gendeg1", bind, B, {"generated_in_degree_one": _jsonable(rep)})
        text = [f"{args[0]}: relations [{', '.join(payload['generators'])}]",
                f"generated in degree 1 (d <= {rep.bound}): {_bool(rep.ok)}"]
        text += [f"  degree {d}: {', '.join(ms)}" for d, ms in rep.failures.items()]
        return self._rec("gendeg1", payload, text, bind)

    def cmd_twist(self, args, bind):
        atlas = self._get(args[0], "atlas")
        n = int(args[1])
        table = graded.twist_cocycle(atlas, n)
        cocycles = {f"{i}->{j}": str(e.cocycle) for (i, j), e in sorted(table.items()) if i != j}
        rep = {"cocycle_condition": graded.twist_cocycle_condition(atlas, n),
               "multiplicative": graded.twist_multiplicative(atlas, n, n)}
        payload = {"kind": "twist", "name": bind, "n": n, "cocycles": cocycles, "reports": rep}
        text = [f"g({atlas.generators[int(k[0])]},{atlas.generators[int(k[-1])]}) = {v}" for k, v in cocycles.items()]
        text += [f"{k.replace('_', ' ')}: {_bool(v)}" for k, v in rep.items()]
        return self._rec("twist", payload, text, bind)

    # --- Rees algebras ---------------------------------------------------------------

    def cmd_rees(self, args, bind):
        if len(args) >= 2 and args[1] == "=":
            bind, args = args[0], args[2:]
        data = self._data(args)
        R = rees.rees_extended(data)
        if bind is not None:
            R.algebra.name = bind
        self._bind(bind, "rees", R)
        images = {v: str(f) for v, f in zip(R.v_names, data.f)}
        reports = {"v": list(R.v_names), "u": R.u_name, "images": images}
        payload = _algebra_payload("rees", bind, R.algebra, reports)
        text = [f"{bind or 'R'} = {data.base.name}[{', '.join(R.v_names + (R.u_name,))}] / "
                f"({', '.join(payload['generators'])})"]
        text += [f"  {v} * {R.u_name} = {f}" for v, f in images.items()]
        return self._rec("rees", payload, text, bind)

    def cmd_cone(self, args, bind):
        C = rees.cone(self._get(args[0], "rees", "ring"))
        self._bind(bind, "ring", C)
        payload = _algebra_payload("ring", bind, C)
        return self._rec("ring", payload, [f"cone({args[0]}) = {_presentation_text(C, payload['generators'])}"], bind)

    def cmd_regularize(self, args, bind):
        R = self._get(args[0], "rees", "ring")
        reg = rees.regularize(R)
        if bind is not None:
            self._bind(bind, "rees" if reg.rees is not None else "ring", reg.rees or reg.algebra)
        rep = {"kernel": reg.kernel.strings(), "stabilized_at": reg.stabilized_at, "zero_ring": reg.is_zero_ring}
        payload = _algebra_payload("rees", bind, reg.algebra, rep)
        text = [f"regularized: [{', '.join(payload['generators'])}]",
                f"kernel: [{', '.join(rep['kernel'])}]", f"stabilized at: {reg.stabilized_at}"]
        if reg.is_zero_ring:
            text.append("zero ring")
        return self._rec("rees", payload, text, bind)

    def cmd_treg(self, args, bind):
        tr = rees.t_regularity(self._get(args[0], "rees", "ring"))
        obs = tr.obstruction.strings()
        payload = {"kind": "treg", "name": bind, "generators": obs, **_ring_fields(tr.obstruction.ctx),
                   "reports": {"t_regular": tr.regular}}
        text = [f"t-regular: {_bool(tr.regular)}"]
        if obs:
            text.append(f"obstruction: [{', '.join(obs)}]")
        return self._rec("treg", payload, text, bind)

    def cmd_compare(self, args, bind):
        R = self._get(args[0], "rees")
        cmp = rees.compare_to_classical(R, self._bound(args, 1, 5))

        def side(s: rees.ClassicalSide) -> dict:
            return {"well_defined": s.well_defined, "agrees": s.agrees,
                    "degrees": {str(d.degree): {"lands": d.lands_in_power, "lifts": d.lifts,
                                                "injective": d.injective} for d in s.degrees}}

        rep = {"match": cmp.match, "t_regular": cmp.t_regular, "bound": cmp.bound,
               "unregularized": side(cmp.unregularized), "regularized": side(cmp.regularized)}
        payload = {"kind": "compare", "name": bind, "generators": [], **_ring_fields(R.ctx), "reports": rep}
        text = [f"match after regularization (n <= {cmp.bound}): {_bool(cmp.match)}",
                f"match without regularization: {_bool(cmp.unregularized.agrees)}"]
        for d in cmp.unregularized.degrees:
            if not d.match:
                text.append(f"  n={d.degree}: lands {_bool(d.lands_in_power)}, lifts {_bool(d.lifts)}, "
                            f"injective {_bool(d.injective)}")
        return self._rec("compare", payload, text, bind)

    def cmd_naturality(self, args, bind):
        if not args:
            raise ValueError("expected: naturality base|target ...")
        mode, rest = args[0], args[1:]
        if mode == "base":
            if len(rest) not in (2, 3):
                raise ValueError("expected: naturality base REES TARGET [images]")
            R = self._get(rest[0], "rees")
            T = self._get(rest[1], "ring")
            A = R.data.base
            images = {}
            if len(rest) == 3:
                imgs = parse_list(rest[2], T.ctx)
                if len(imgs) != A.ctx.nvars:
                    raise ValueError(f"need {A.ctx.nvars} images")
                images = dict(zip(A.ctx.names, imgs))
            gmap, rep = rees.rees_naturality("base_change", rees.BaseChange(R.data, T, images))
            reports = {"well_defined": rep.well_defined, "two_sided": rep.two_sided, "verbatim": rep.verbatim}
            text = [f"base change well-defined: {_bool(rep.well_defined)}",
                    f"two-sided: {_bool(rep.two_sided)}", f"verbatim: {_bool(rep.verbatim)}"]
        elif mode == "target":
            if len(rest) != 3:
                raise ValueError("expected: naturality target RING [a] [b]")
            C = self._get(rest[0], "ring")
            a = tuple(self._ideal_binding(rest[1], C).gens)
            b = tuple(self._ideal_binding(rest[2], C).gens)
            gmap, rep = rees.rees_naturality("target", rees.TargetChange(C, a, b), self._bound([], 0, 4))
            reports = {"well_defined": rep.well_defined, "surjective": {str(d): s for d, s in rep.surjective.items()}}
            text = [f"target map well-defined: {_bool(rep.well_defined)}"]
            text += [f"surjective in degree {d}: {_bool(s)}" for d, s in rep.surjective.items()]
        else:
            raise ValueError(f"unknown naturality mode {mode!r}")
        reports["ok"] = rep.ok
        payload = {"kind": "naturality", "name": bind, "mode": mode, "images": gmap.image_strings(),
                   "generators": [], **_ring_fields(gmap.target.ctx), "reports": reports}
        return self._rec("naturality", payload, text, bind)

    # --- blow-ups ----------------------------------------------------------------------

    def cmd_nonneg(self, args, bind):
        B = blowup.nonneg_part(self._get(args[0], "rees"))
        self._bind(bind, "ring", B)
        rep = {"generated_in_degree_one": _jsonable(B.meta["generated_in_degree_one"])}
        payload = _algebra_payload("ring", bind, B, rep)
        return self._rec("ring", payload, [f"{args[0]}>=0 = {_presentation_text(B, payload['generators'])}"], bind)

    def _atlas_rec(self, atlas: ProjAtlas, bind, extra: list[str] | None = None, reports: dict | None = None):
        self._bind(bind, "atlas", atlas)
        payload = _atlas_payload(atlas, bind)
        if reports:
            payload.setdefault("reports", {}).update(reports)
        return self._rec("atlas", payload, _atlas_text(atlas) + (extra or []), bind)

    def cmd_proj(self, args, bind):
        B = self._algebra(args[0])
        gens = parse_list(args[1], B.ctx) if len(args) > 1 else None
        return self._atlas_rec(blowup.proj_atlas(B, gens), bind)

    def cmd_blowup(self, args, bind):
        regularized = bool(args) and args[-1] == "regularized"
        if regularized:
            args = args[:-1]
        return self._atlas_rec(blowup.blow_up(self._data(args), regularized), bind)

    def cmd_exceptional(self, args, bind):
        E = blowup.exceptional_divisor(self._data(args), self._bound([], 0, 4))
        rep = {"chart_agreement": E.chart_agreement, "kappa_well_defined": E.kappa_well_defined,
               "kappa_surjective": {str(d): s for d, s in E.kappa_surjective.items()}}
        extra = [f"E-chart = blow-up chart / exceptional: {', '.join(_bool(a) for a in E.chart_agreement) or 'n/a'}",
                 f"kappa surjective (d <= {max(E.kappa_surjective)}): {_bool(E.kappa_ok)}"]
        return self._atlas_rec(E.atlas, bind, extra, rep)

    def cmd_empty(self, args, bind):
        atlas = self._get(args[0], "atlas")
        e = blowup.is_empty_atlas(atlas)
        payload = {"kind": "empty", "name": args[0], "reports": {"empty": e}}
        return self._rec("empty", payload, [f"empty: {_bool(e)}"], bind)

    def cmd_deform(self, args, bind):
        R = self._get(args[0], "rees")
        c = Fraction(args[1]) if R.ctx.field.characteristic == 0 else int(args[1])
        F = blowup.deformation_fiber(R, c)
        self._bind(bind, "ring", F.algebra)
        rep = {"c": str(F.c), "cone": F.is_cone}
        text = [f"fiber at u = {F.c}: ({', '.join(F.algebra.ideal.groebner().strings())})"]
        if F.isomorphism is not None:
            rep["isomorphic_to_base"] = F.isomorphism.ok
            text.append(f"isomorphic to base: {_bool(F.isomorphism.ok)}")
        else:
            text.append("cone: true")
        payload = _algebra_payload("ring", bind, F.algebra, rep)
        return self._rec("ring", payload, text, bind)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return _bool(v)
    return str(v)
