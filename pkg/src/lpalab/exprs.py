"""Text form for path-algebra elements.

Vertices and edges print by id, a ghost edge as the id followed by an
apostrophe, products with a middle dot, and terms in monomial order.  The
parser accepts the same syntax plus "*" for the product (the dot is awkward
to type), integer and a/b scalars, parentheses, "[x,y]" for the Lie bracket
and "{x,y}" for the Jordan circle.  Every printed element re-parses to an
equal element.
"""

from __future__ import annotations

import re

from .algebra import LeavittAlgebra, Element, mono_order_key


class ExprError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


def format_mono(algebra: LeavittAlgebra, m) -> str:
    lam, nu, anchor = m
    if not lam and not nu:
        return algebra.graph.vertices[anchor].id
    edges = algebra.graph.edges
    parts = [edges[e].id for e in lam] + [edges[e].id + "'" for e in reversed(nu)]
    return "·".join(parts)


def format_element(el: Element) -> str:
    if not el.terms:
        return "0"
    alg = el.algebra
    f = alg.field
    rational = f.characteristic == 0
    parts = []
    for i, (m, c) in enumerate(sorted(el.terms.items(), key=lambda kv: mono_order_key(kv[0]))):
        mono = format_mono(alg, m)
        if rational:
            neg = c < 0
            mag = -c if neg else c
            body = mono if mag == 1 else f"{mag}·{mono}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        else:
            body = mono if c == f.one else f"{f.to_str(c)}·{mono}"
            parts.append(body if i == 0 else "+ " + body)
    return " ".join(parts)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*'?)|(?P<op>[·*+\-/\[\]{}(),]))"
)


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if match.lastgroup == "num":
            toks.append(("num", match.group("num"), match.start("num")))
        elif match.lastgroup == "ident":
            toks.append(("ident", match.group("ident"), match.start("ident")))
        else:
            toks.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    """Recursive descent over (scalar, element-or-None) values."""

    def __init__(self, algebra: LeavittAlgebra, text: str):
        self.alg = algebra
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprError(f"expected {op!r}", pos)

    def parse(self) -> Element:
        val, pos = self.expr()
        kind, _, p = self.peek()
        if kind != "end":
            raise ExprError("trailing input", p)
        if val[1] is None:
            # the algebra has no unit, so a bare scalar only means zero
            if self.alg.field.is_zero(val[0]):
                return self.alg.zero()
            raise ExprError("expression has no algebra factor", pos)
        return self.materialize(val)

    def materialize(self, val) -> Element:
        c, el = val
        return self.alg.scale(c, el)

    def expr(self):
        val, pos = self.term()
        while True:
            kind, op, p = self.peek()
            if kind == "op" and op in "+-":
                self.take()
                rhs, rpos = self.term()
                if (val[1] is None) != (rhs[1] is None):
                    raise ExprError("cannot add a bare scalar to an algebra element", rpos)
                if val[1] is None:
                    c = self.alg.field.add(val[0], rhs[0] if op == "+" else self.alg.field.neg(rhs[0]))
                    val = (c, None)
                else:
                    a = self.materialize(val)
                    b = self.materialize(rhs)
                    val = (self.alg.field.one, a + b if op == "+" else a - b)
            else:
                return val, pos

    def term(self):
        val, pos = self.factor()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in ("·", "*"):
                self.take()
                rhs, _ = self.factor()
                val = self.mul(val, rhs)
            else:
                return val, pos

    def mul(self, a, b):
        f = self.alg.field
        ca, ea = a
        cb, eb = b
        c = f.mul(ca, cb)
        if ea is None and eb is None:
            return (c, None)
        if ea is None:
            return (c, eb)
        if eb is None:
            return (c, ea)
        return (c, self.alg.multiply(ea, eb))

    def factor(self):
        kind, val, pos = self.take()
        f = self.alg.field
        if kind == "op" and val == "-":
            inner, _ = self.factor()
            return (f.neg(inner[0]), inner[1]), pos
        if kind == "num":
            nxt_kind, nxt_val, _ = self.peek()
            if nxt_kind == "op" and nxt_val == "/":
                self.take()
                dkind, dval, dpos = self.take()
                if dkind != "num":
                    raise ExprError("expected denominator", dpos)
                return (f.parse(f"{val}/{dval}"), None), pos
            return (f.parse(val), None), pos
        if kind == "ident":
            return (f.one, self.atom(val, pos)), pos
        if kind == "op" and val == "(":
            inner, _ = self.expr()
            self.expect(")")
            return inner, pos
        if kind == "op" and val == "[":
            x, y = self.pair("]")
            return (f.one, self.alg.bracket(x, y)), pos
        if kind == "op" and val == "{":
            x, y = self.pair("}")
            return (f.one, self.alg.circle(x, y)), pos
        raise ExprError(f"unexpected token {val!r}", pos)

    def pair(self, closer: str):
        xv, xp = self.expr()
        if xv[1] is None:
            raise ExprError("expected an algebra element", xp)
        self.expect(",")
        yv, yp = self.expr()
        if yv[1] is None:
            raise ExprError("expected an algebra element", yp)
        self.expect(closer)
        return self.materialize(xv), self.materialize(yv)

    def atom(self, ident: str, pos: int) -> Element:
        g = self.alg.graph
        if ident.endswith("'"):
            eid = ident[:-1]
            if eid not in g.edge_pos:
                raise ExprError(f"unknown edge id {eid!r}", pos)
            return self.alg.ghost(eid)
        if ident in g.edge_pos:
            return self.alg.edge(ident)
        if ident in g.vertex_pos:
            return self.alg.vertex(ident)
        raise ExprError(f"unknown identifier {ident!r}", pos)


def parse_element(algebra: LeavittAlgebra, text: str) -> Element:
    return _Parser(algebra, text).parse()
