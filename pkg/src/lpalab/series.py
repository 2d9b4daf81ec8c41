"""Exact sparse linear algebra over ordered coordinate keys, and the derived /
lower central series built on it.

A Subspace is a canonical reduced echelon basis: rows are sparse dicts
{key: coefficient}, the pivot of each row is its least key under the supplied
order, pivots strictly increase down the row list, every pivot has coefficient
one and is eliminated from all other rows.  Two subspaces are equal iff their
row lists are identical, which makes vanish detection exact.

The same machinery serves the path algebra (keys are monomials) and the
matrix rings (keys are entry coordinates, possibly with a Laurent exponent).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import LeavittAlgebra, Element, forbidden_embedding_units, mono_order_key
from .graphs import Graph, is_acyclic


class SeriesError(ValueError):
    pass


class Subspace:
    """Reduced echelon span of sparse rows over an exact field."""

    __slots__ = ("field", "key", "rows", "_pivots")

    def __init__(self, fld, key: Callable = None):
        self.field = fld
        self.key = key or (lambda k: k)
        self.rows: list = []
        self._pivots: dict = {}

    def copy(self) -> "Subspace":
        s = Subspace(self.field, self.key)
        s.rows = [dict(r) for r in self.rows]
        s._pivots = {p: i for p, i in self._pivots.items()}
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _axpy(self, row: dict, c, other: dict):
        # row -= c * other, in place
        f = self.field
        for k, v in other.items():
            s = f.sub(row.get(k, f.zero), f.mul(c, v))
            if f.is_zero(s):
                row.pop(k, None)
            else:
                row[k] = s

    def reduce(self, vec: dict) -> dict:
        """Remainder of vec against the current basis (vec not mutated)."""
        f = self.field
        row = dict(vec)
        while row:
            p = min(row, key=self.key)
            hit = self._pivots.get(p)
            if hit is None:
                return row
            self._axpy(row, row[p], self.rows[hit])
        return row

    def insert(self, vec: dict) -> bool:
        """Add one row; returns True when the dimension grew."""
        row = self.reduce(vec)
        if not row:
            return False
        f = self.field
        p = min(row, key=self.key)
        inv = f.inv(row[p])
        row = {k: f.mul(inv, v) for k, v in row.items()}
        # eliminate the new pivot from every existing row
        for r in self.rows:
            c = r.get(p)
            if c is not None:
                self._axpy(r, c, row)
        self.rows.append(row)
        self.rows.sort(key=lambda r: self.key(min(r, key=self.key)))
        self._pivots = {min(r, key=self.key): i for i, r in enumerate(self.rows)}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows

    def is_zero(self) -> bool:
        return not self.rows


def span(fld, vectors, key: Callable = None) -> Subspace:
    s = Subspace(fld, key)
    for v in vectors:
        s.insert(v)
    return s


def product_span(S: Subspace, T: Subspace, pair_op: Callable, same: bool = False,
                 symmetric: bool = False) -> Subspace:
    """Span of pair_op over all row pairs (bilinearity makes rows sufficient).

    With same=True and an alternating op only the strict upper triangle is
    needed; a symmetric op also needs the diagonal.
    """
    out = Subspace(S.field, S.key)
    if same:
        n = len(S.rows)
        for i in range(n):
            start = i if symmetric else i + 1
            for j in range(start, n):
                v = pair_op(S.rows[i], S.rows[j])
                if v:
                    out.insert(v)
    else:
        for a in S.rows:
            for b in T.rows:
                v = pair_op(a, b)
                if v:
                    out.insert(v)
    return out


@dataclass
class SeriesReport:
    """Dimensions of one solvability/nilpotency series run.

    dims[k] is the dimension at step k (step 0 = the starting span).  In
    truncated mode a nonzero step is sound evidence while a vanishing step is
    not conclusive; the caveat says so.  ``stabilized`` marks a derived series
    that reached a fixed nonzero subspace, which is definitive non-vanishing.
    """

    kind: str
    mode: str
    dims: list
    vanished_at: Optional[int] = None
    witness_text: Optional[str] = None
    caveat: Optional[str] = None
    stabilized: bool = False
    weight: Optional[int] = None

    def nonzero_through(self, depth: int) -> bool:
        return len(self.dims) > depth and all(d > 0 for d in self.dims[: depth + 1])

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode if self.weight is None else f"{self.mode}({self.weight})",
            "dims": list(self.dims),
            "vanished_at": self.vanished_at,
            "witness": self.witness_text,
            "caveat": self.caveat,
        }


def _run_series(S0: Subspace, pair_op: Callable, max_depth, lower_central: bool,
                symmetric_op: bool) -> tuple:
    """Shared driver; returns (dims, vanished_at, witness_row, stabilized).

    max_depth None means run until the series vanishes or stabilizes; that is
    guaranteed to happen within dim(S0) + 1 steps whenever S0 is closed under
    the product (the exact-mode situation), because the steps then descend.
    """
    dims = [S0.dim]
    if S0.dim == 0:
        return dims, 0, None, False
    if max_depth is None:
        max_depth = S0.dim + 1
    current = S0
    witness = current.rows[0]
    stabilized = False
    for step in range(1, max_depth + 1):
        nxt = product_span(
            current, S0 if lower_central else current, pair_op,
            same=not lower_central, symmetric=symmetric_op,
        )
        dims.append(nxt.dim)
        if nxt.dim == 0:
            return dims, step, witness, False
        witness = nxt.rows[0]
        if nxt == current:
            # A fixed point repeats forever, for either series.
            stabilized = True
            break
        current = nxt
    return dims, None, witness, stabilized


def derived_series(S0: Subspace, pair_op: Callable, max_depth: int,
                   kind: str = "derived", mode: str = "exact",
                   symmetric_op: bool = False, format_row: Callable = None,
                   weight: int = None) -> SeriesReport:
    """Iterate S_{k+1} = [S_k, S_k] until zero, stabilization, or max_depth."""
    dims, vanished, witness, stabilized = _run_series(S0, pair_op, max_depth, False, symmetric_op)
    return _report(kind, mode, dims, vanished, witness, stabilized, format_row, weight)


def lower_central_series(S0: Subspace, pair_op: Callable, max_depth: int,
                         kind: str = "lower_central", mode: str = "exact",
                         symmetric_op: bool = False, format_row: Callable = None,
                         weight: int = None) -> SeriesReport:
    """Iterate S_{k+1} = [S_k, S_0] until zero or max_depth."""
    dims, vanished, witness, stabilized = _run_series(S0, pair_op, max_depth, True, symmetric_op)
    return _report(kind, mode, dims, vanished, witness, stabilized, format_row, weight)


def _report(kind, mode, dims, vanished, witness, stabilized, format_row, weight):
    caveat = None
    if mode.startswith("truncated"):
        if vanished is not None:
            caveat = "truncated computation: a vanishing step bounds nothing; nonzero steps are sound"
        else:
            caveat = "truncated computation: nonzero steps are sound lower-bound evidence"
    elif stabilized:
        caveat = "series reached a fixed nonzero subspace; it never vanishes"
    text = None
    if witness is not None and vanished != 0 and format_row is not None:
        text = format_row(witness)
    return SeriesReport(kind=kind, mode=mode, dims=dims, vanished_at=vanished,
                        witness_text=text, caveat=caveat, stabilized=stabilized,
                        weight=weight)


# ----------------------------------------------------------------------
# path-algebra front end


def element_subspace(algebra: LeavittAlgebra, elements) -> Subspace:
    """Canonical span of path-algebra elements (rows are term dicts)."""
    s = Subspace(algebra.field, mono_order_key)
    for el in elements:
        if isinstance(el, Element):
            algebra._require_context(el)
            s.insert(el.terms)
        else:
            s.insert(el)
    return s


def element_pair_op(algebra: LeavittAlgebra, op: str) -> Callable:
    if op == "bracket":
        fn = algebra.bracket
    elif op == "circle":
        fn = algebra.circle
    else:
        raise SeriesError(f"unknown subspace product: {op!r}")

    def dict_op(a: dict, b: dict) -> dict:
        return fn(Element(algebra, a), Element(algebra, b)).terms

    return dict_op


def solvability_probe(graph: Graph, fld, structure: str = "lie", mode: str = "exact",
                      weight: int = 6, max_depth=8) -> SeriesReport:
    """Build the skew (Lie) or symmetric (Jordan) span and run its derived
    series.

    Exact mode needs an acyclic materialized graph, where the basis is finite
    and the answer is complete.  Truncated mode restricts the generators to
    the weight bound but never clips products, so every nonzero step is a
    genuine lower bound while a vanishing step is only evidence.
    """
    from .exprs import format_element

    if structure not in ("lie", "jordan"):
        raise SeriesError(f"unknown structure: {structure!r}")
    algebra = LeavittAlgebra(graph, fld)
    if mode == "exact":
        if not is_acyclic(graph):
            raise SeriesError("exact mode requires an acyclic materialized graph")
        bound = 2 * algebra.longest_path_length()
        used_weight = None
    elif mode == "truncated":
        if weight is None or weight < 0:
            raise SeriesError("truncated mode requires a weight bound")
        if max_depth is None:
            raise SeriesError("truncated mode requires a finite depth")
        bound = weight
        used_weight = weight
    else:
        raise SeriesError(f"unknown mode: {mode!r}")
    if structure == "lie":
        gens = algebra.skew_generators(bound)
        op = "bracket"
    else:
        gens = algebra.symmetric_generators(bound)
        op = "circle"
    S0 = element_subspace(algebra, gens)
    fmt = lambda row: format_element(Element(algebra, row))
    return derived_series(
        S0,
        element_pair_op(algebra, op),
        max_depth,
        kind="derived" if structure == "lie" else "jordan_derived",
        mode=mode,
        symmetric_op=(op == "circle"),
        format_row=fmt,
        weight=used_weight,
    )


def nonsolvability_certificate(graph: Graph, fld, witness, depth: int = 3) -> list:
    """Explicit nonzero members of every derived step of the skew part.

    A forbidden-structure witness embeds a 3x3 matrix-unit family u_ij in the
    algebra.  Starting from the skew elements A = u12 - u21 and B = u23 - u32,
    the recursion A' = [X, B], B' = [X, A], X' = [A', B'] keeps X_m inside the
    m-th derived step, and the closed coefficient form (with a = c = 1, b = 0,
    so a^2 + b^2 = 1 in every field) keeps it nonzero.  Returns [X_1..X_depth]
    and verifies each against its closed form; raises SeriesError on any
    mismatch, so a returned chain is a checked certificate.
    """
    algebra = LeavittAlgebra(graph, fld)
    units = forbidden_embedding_units(algebra, witness)

    def skew_diff(i, j):
        return algebra.sub(units[(i, j)], units[(j, i)])

    f = algebra.field
    am, bm, cm = f.one, f.zero, f.one
    A = skew_diff(1, 2)
    B = skew_diff(2, 3)
    chain = []
    for m in range(1, depth + 1):
        X = algebra.bracket(A, B)
        closed = algebra.sub(
            algebra.scale(f.neg(f.mul(bm, cm)), skew_diff(1, 2)),
            algebra.scale(f.neg(f.mul(am, cm)), skew_diff(1, 3)),
        )
        if X != closed or X.is_zero():
            raise SeriesError(f"certificate chain broke at step {m}")
        chain.append(X)
        if m == depth:
            break
        A, B = algebra.bracket(X, B), algebra.bracket(X, A)
        am, bm, cm = (
            f.neg(f.mul(am, f.mul(cm, cm))),
            f.neg(f.mul(bm, f.mul(cm, cm))),
            f.mul(f.add(f.mul(am, am), f.mul(bm, bm)), cm),
        )
    return chain


def laurent_corner_certificate(graph: Graph, fld, entry_edge: str, cycle_edges,
                               depth: int = 3) -> list:
    """Nonzero derived-step members for a cycle-without-exit component when
    the characteristic is not 2.

    A cycle y based at w together with an edge p into w from outside spans a
    degree-2 matrix corner whose entries are Laurent polynomials in y.  With
    the skew scalar u = y - y*, the elements A = p u + u p* and
    B = p u p* - u satisfy the recursion A' = [X, B], B' = [X, A],
    X = [A, B], whose corner coefficient obeys v' = 4 v^3 and never vanishes
    away from characteristic 2.  Returns the checked chain [X_1..X_depth].
    """
    if fld.characteristic == 2:
        raise SeriesError("the degree-2 corner recursion needs characteristic != 2")
    algebra = LeavittAlgebra(graph, fld)
    ep = algebra.graph.edge_pos
    p = [entry_edge]
    y = list(cycle_edges)
    if algebra.graph.edges[ep[entry_edge]].dst != algebra.graph.edges[ep[y[0]]].src:
        raise SeriesError("entry edge must end where the cycle starts")
    u = algebra.sub(algebra.path_pair(y, []), algebra.path_pair([], y))
    uE12 = algebra.sub(algebra.path_pair(p + y, []), algebra.path_pair(p, y))
    uE11 = algebra.sub(algebra.path_pair(p + y, p), algebra.path_pair(p, p + y))
    # A = u E12 + u E21 and B = u E11 - u E22 in the corner coordinates;
    # the star of u E12 is -(u E21), so both are skew.
    A = algebra.sub(uE12, algebra.involute(uE12))
    B = algebra.sub(uE11, u)
    chain = []
    for m in range(1, depth + 1):
        X = algebra.bracket(A, B)
        if X.is_zero():
            raise SeriesError(f"corner certificate chain vanished at step {m}")
        chain.append(X)
        if m == depth:
            break
        A, B = algebra.bracket(X, B), algebra.bracket(X, A)
    return chain
