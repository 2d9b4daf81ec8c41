"""Matrix rings over an exact field or a Laurent ring, carrying the
transpose-with-entry-involution, their skew-symmetric parts, and the witness
recursions that decide Lie solvability degree by degree.

Matrices are tuples of tuples of ring values, manipulated through the ring
object so the same code serves field entries and Laurent entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .scalars import LaurentRing
from .series import Subspace, derived_series, lower_central_series


class MatrixLabError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixRingCtx:
    n: int
    ring: object

    def __post_init__(self):
        if self.n < 1:
            raise MatrixLabError("matrix degree must be >= 1")

    @property
    def involution_kind(self) -> str:
        return "laurent" if isinstance(self.ring, LaurentRing) else "transpose"


def mat(ctx: MatrixRingCtx, rows) -> tuple:
    rows = tuple(tuple(r) for r in rows)
    if len(rows) != ctx.n or any(len(r) != ctx.n for r in rows):
        raise MatrixLabError(f"expected a {ctx.n}x{ctx.n} matrix")
    return rows


def zero_mat(ctx: MatrixRingCtx) -> tuple:
    z = ctx.ring.zero
    return tuple(tuple(z for _ in range(ctx.n)) for _ in range(ctx.n))


def unit(ctx: MatrixRingCtx, i: int, j: int, value=None) -> tuple:
    """E_ij, 1-indexed, with an optional ring value instead of one."""
    v = ctx.ring.one if value is None else value
    return tuple(
        tuple(v if (r, c) == (i - 1, j - 1) else ctx.ring.zero for c in range(ctx.n))
        for r in range(ctx.n)
    )


def mat_add(ctx, A, B):
    add = ctx.ring.add
    return tuple(tuple(add(A[i][j], B[i][j]) for j in range(ctx.n)) for i in range(ctx.n))


def mat_neg(ctx, A):
    neg = ctx.ring.neg
    return tuple(tuple(neg(A[i][j]) for j in range(ctx.n)) for i in range(ctx.n))


def mat_sub(ctx, A, B):
    return mat_add(ctx, A, mat_neg(ctx, B))


def mat_mul(ctx, A, B):
    ring = ctx.ring
    n = ctx.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ring.zero
            for k in range(n):
                acc = ring.add(acc, ring.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_bracket(ctx, A, B):
    return mat_sub(ctx, mat_mul(ctx, A, B), mat_mul(ctx, B, A))


def mat_involution(ctx, A):
    """Transpose with the entry involution applied; an anti-automorphism."""
    inv = ctx.ring.involute
    return tuple(tuple(inv(A[j][i]) for j in range(ctx.n)) for i in range(ctx.n))


def mat_is_zero(ctx, A) -> bool:
    return all(ctx.ring.is_zero(A[i][j]) for i in range(ctx.n) for j in range(ctx.n))


def is_skew(ctx, A) -> bool:
    return mat_involution(ctx, A) == mat_neg(ctx, A)


def mat_to_str(ctx, A) -> str:
    return "[" + ", ".join("[" + ", ".join(ctx.ring.to_str(x) for x in row) + "]" for row in A) + "]"


def skew_matrix_basis(ctx: MatrixRingCtx, degree_bound: int = 0) -> list:
    """Spanning set of the skew part.

    Plain-field transpose: the E_ij - E_ji for i < j, plus (characteristic 2
    only) the diagonal units and the pair sums.  Laurent 2x2: matrices
    [[a, b], [-b~, c]] with a, c skew Laurents, entries restricted to exponent
    magnitude <= degree_bound.
    """
    ring = ctx.ring
    out = []
    if ctx.involution_kind == "transpose":
        char2 = ring.characteristic == 2
        for i in range(1, ctx.n + 1):
            for j in range(i + 1, ctx.n + 1):
                off = unit(ctx, i, j)
                mirrored = unit(ctx, j, i)
                out.append(mat_add(ctx, off, mirrored) if char2 else mat_sub(ctx, off, mirrored))
        if char2:
            for i in range(1, ctx.n + 1):
                out.append(unit(ctx, i, i))
        return out
    if ctx.n != 2:
        raise MatrixLabError("laurent skew basis implemented for degree 2 only")
    char2 = ring.characteristic == 2
    skew_scalars = []
    if char2:
        skew_scalars.append(ring.one)
        for k in range(1, degree_bound + 1):
            skew_scalars.append(ring.add(ring.monomial(k), ring.monomial(-k)))
    else:
        for k in range(1, degree_bound + 1):
            skew_scalars.append(ring.sub(ring.monomial(k), ring.monomial(-k)))
    for s in skew_scalars:
        out.append(mat(ctx, [[s, ring.zero], [ring.zero, ring.zero]]))
        out.append(mat(ctx, [[ring.zero, ring.zero], [ring.zero, s]]))
    for k in range(-degree_bound, degree_bound + 1):
        b = ring.monomial(k)
        out.append(mat(ctx, [[ring.zero, b], [ring.neg(ring.involute(b)), ring.zero]]))
    return out


# ----------------------------------------------------------------------
# reports


@dataclass
class MatrixReport:
    case: str
    params: dict
    steps_checked: int = 0
    failures: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "case": self.case,
            "params": self.params,
            "steps_checked": self.steps_checked,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }


# ----------------------------------------------------------------------
# witness recursions


def witness_nge3(ctx: MatrixRingCtx, a, b, c, steps: int) -> MatrixReport:
    """Non-solvability witnesses in degree >= 3 over a field.

    Starting from A = a(E12-E21) + b(E13-E31), B = c(E23-E32), the recursion
    A' = [X, B], B' = [X, A], X' = [A', B'] keeps the closed coefficient form
    (a, b, c) -> (-a c^2, -b c^2, (a^2 + b^2) c), and X stays nonzero because
    a^2 + b^2 and c are preserved nonzero.  Each step is verified by direct
    bracket evaluation against the closed forms.
    """
    ring = ctx.ring
    if isinstance(ring, LaurentRing):
        raise MatrixLabError("witness_nge3 takes field entries")
    if ctx.n < 3:
        raise MatrixLabError("witness_nge3 needs degree >= 3")
    if ring.is_zero(c):
        raise MatrixLabError("precondition violated: c = 0")
    if ring.is_zero(ring.add(ring.mul(a, a), ring.mul(b, b))):
        raise MatrixLabError("precondition violated: a^2 + b^2 = 0")
    rep = MatrixReport("prop3a", {"a": ring.to_str(a), "b": ring.to_str(b),
                                  "c": ring.to_str(c), "n": ctx.n, "steps": steps})

    def skew_pair(i, j, coeff):
        return mat_sub(ctx, unit(ctx, i, j, coeff), unit(ctx, j, i, coeff))

    am, bm, cm = a, b, c
    A = mat_add(ctx, skew_pair(1, 2, am), skew_pair(1, 3, bm))
    B = skew_pair(2, 3, cm)
    for m in range(1, steps + 1):
        X = mat_bracket(ctx, A, B)
        xa = ring.neg(ring.mul(bm, cm))
        xb = ring.mul(am, cm)
        closed_X = mat_add(ctx, skew_pair(1, 2, xa), skew_pair(1, 3, xb))
        if X != closed_X:
            rep.failures.append(f"step {m}: X differs from closed form")
        if mat_is_zero(ctx, X):
            rep.failures.append(f"step {m}: X vanished")
        for name, M in (("A", A), ("B", B), ("X", X)):
            if not is_skew(ctx, M):
                rep.failures.append(f"step {m}: {name} not skew")
        if m == steps:
            break
        A2 = mat_bracket(ctx, X, B)
        B2 = mat_bracket(ctx, X, A)
        a2 = ring.neg(ring.mul(am, ring.mul(cm, cm)))
        b2 = ring.neg(ring.mul(bm, ring.mul(cm, cm)))
        c2 = ring.mul(ring.add(ring.mul(am, am), ring.mul(bm, bm)), cm)
        if A2 != mat_add(ctx, skew_pair(1, 2, a2), skew_pair(1, 3, b2)):
            rep.failures.append(f"step {m + 1}: A differs from closed form")
        if B2 != skew_pair(2, 3, c2):
            rep.failures.append(f"step {m + 1}: B differs from closed form")
        A, B, am, bm, cm = A2, B2, a2, b2, c2
    rep.steps_checked = steps
    return rep


def witness_nilpotent_char2(ring, steps: int) -> MatrixReport:
    """Iterated bracket [A, B], [[A, B], B], ... with A = E12 + E21, B = E11
    stays equal to A in characteristic 2, so the lower central series never
    dies."""
    if ring.characteristic != 2:
        raise MatrixLabError("wrong characteristic: need 2")
    ctx = MatrixRingCtx(2, ring)
    A = mat_add(ctx, unit(ctx, 1, 2), unit(ctx, 2, 1))
    B = unit(ctx, 1, 1)
    rep = MatrixReport("prop3b", {"steps": steps})
    for name, M in (("A", A), ("B", B)):
        if not is_skew(ctx, M):
            rep.failures.append(f"{name} not skew")
    T = A
    for m in range(1, steps + 1):
        T = mat_bracket(ctx, T, B)
        if T != A:
            rep.failures.append(f"step {m}: iterated bracket drifted")
        if mat_is_zero(ctx, T):
            rep.failures.append(f"step {m}: iterated bracket vanished")
    rep.steps_checked = steps
    return rep


def witness_laurent_nonsolvable(ring: LaurentRing, u: dict, steps: int) -> MatrixReport:
    """Degree-2 non-solvability over a Laurent ring, characteristic != 2.

    From A = [[0, u], [u, 0]] and B = [[u, 0], [0, -u]] with u skew, the
    recursion produces X_m = [[0, (-1)^m 2 v^2], [(-1)^(m+1) 2 v^2, 0]] and
    v' = 4 v^3, all verified by direct brackets; coefficients grow triply
    exponentially, which is why the scalars are arbitrary precision.
    """
    if ring.characteristic == 2:
        raise MatrixLabError("wrong characteristic: need != 2")
    if ring.is_zero(u):
        raise MatrixLabError("precondition violated: u = 0")
    if ring.involute(u) != ring.neg(u):
        raise MatrixLabError("precondition violated: u is not skew")
    ctx = MatrixRingCtx(2, ring)
    rep = MatrixReport("prop3d", {"u": ring.to_str(u), "steps": steps})
    two = ring.from_int(2)
    four = ring.from_int(4)

    def closed_A(v):
        return mat(ctx, [[ring.zero, v], [v, ring.zero]])

    def closed_B(v, m):
        s1 = v if (m + 1) % 2 == 0 else ring.neg(v)
        s2 = v if m % 2 == 0 else ring.neg(v)
        return mat(ctx, [[s1, ring.zero], [ring.zero, s2]])

    def closed_X(v, m):
        t = ring.mul(two, ring.mul(v, v))
        top = t if m % 2 == 0 else ring.neg(t)
        return mat(ctx, [[ring.zero, top], [ring.neg(top), ring.zero]])

    v = u
    A = closed_A(v)
    B = closed_B(v, 1)
    for m in range(1, steps + 1):
        X = mat_bracket(ctx, A, B)
        if X != closed_X(v, m):
            rep.failures.append(f"step {m}: X differs from closed form")
        if mat_is_zero(ctx, X):
            rep.failures.append(f"step {m}: X vanished")
        for name, M in (("A", A), ("B", B), ("X", X)):
            if not is_skew(ctx, M):
                rep.failures.append(f"step {m}: {name} not skew")
        if m == steps:
            break
        A2 = mat_bracket(ctx, X, B)
        B2 = mat_bracket(ctx, X, A)
        v2 = ring.mul(four, ring.mul(v, ring.mul(v, v)))
        if ring.involute(v2) != ring.neg(v2) or ring.is_zero(v2):
            rep.failures.append(f"step {m + 1}: v' = 4v^3 is not a nonzero skew scalar")
        if A2 != closed_A(v2):
            rep.failures.append(f"step {m + 1}: A differs from closed form")
        if B2 != closed_B(v2, m + 1):
            rep.failures.append(f"step {m + 1}: B differs from closed form")
        A, B, v = A2, B2, v2
    rep.steps_checked = steps
    return rep


# ----------------------------------------------------------------------
# characteristic-2 Laurent checks


def _skew_entries(ctx, A):
    """(a, b, c) for A = [[a, b], [-b~, c]]; raises if A is not skew."""
    if not is_skew(ctx, A):
        raise MatrixLabError("matrix is not skew")
    return A[0][0], A[0][1], A[1][1]


def first_bracket_closed_form(ctx: MatrixRingCtx, A, B):
    """[A, B] for skew 2x2 A, B via the closed form: [[r, s], [-s~, -r]] with
    r = b~ v - b v~ and s = v (a - c) + b (w - u)."""
    ring = ctx.ring
    a, b, c = _skew_entries(ctx, A)
    u, v, w = _skew_entries(ctx, B)
    r = ring.sub(ring.mul(ring.involute(b), v), ring.mul(b, ring.involute(v)))
    s = ring.add(ring.mul(v, ring.sub(a, c)), ring.mul(b, ring.sub(w, u)))
    return mat(ctx, [[r, s], [ring.neg(ring.involute(s)), ring.neg(r)]])


def diagonal_closed_form(ctx: MatrixRingCtx, A1, B1, A2, B2):
    """The (1,1) entry of [X1, X2] expanded in the starting entries:
    (v2 v1~ - v1 v2~)(a1 - c1)(c2 - a2) + (v2 b1~ - b1 v2~)(a2 - c2)(u1 - w1)
    + (v1 b2~ - b2 v1~)(w2 - u2)(a1 - c1) + (b1 b2~ - b2 b1~)(u1 - w1)(u2 - w2).
    """
    ring = ctx.ring
    a1, b1, c1 = _skew_entries(ctx, A1)
    u1, v1, w1 = _skew_entries(ctx, B1)
    a2, b2, c2 = _skew_entries(ctx, A2)
    u2, v2, w2 = _skew_entries(ctx, B2)

    def twist(p, q):
        return ring.sub(ring.mul(p, ring.involute(q)), ring.mul(q, ring.involute(p)))

    t1 = ring.mul(twist(v2, v1), ring.mul(ring.sub(a1, c1), ring.sub(c2, a2)))
    t2 = ring.mul(twist(v2, b1), ring.mul(ring.sub(a2, c2), ring.sub(u1, w1)))
    t3 = ring.mul(twist(v1, b2), ring.mul(ring.sub(w2, u2), ring.sub(a1, c1)))
    t4 = ring.mul(twist(b1, b2), ring.mul(ring.sub(u1, w1), ring.sub(u2, w2)))
    return ring.add(ring.add(t1, t2), ring.add(t3, t4))


def char2_laurent_index3_check(samples: int, degree_bound: int, seed: int,
                               base_field=None) -> MatrixReport:
    """Characteristic-2 solvability bound with sharpness, over F2[x, x^-1].

    Upper bound: for seeded random skew 8-tuples, the first-level brackets
    X_i have the closed form [[r_i, s_i], [-s_i~, -r_i]], the second-level
    brackets [X1, X2] and [X3, X4] are diagonal with the expanded entry, and
    [[X1, X2], [X3, X4]] is zero.  Sharpness: the tuple a_i = c_i = 0, b1 = 1,
    b2 = x, v_i = 0, u1 = u2 = 1, w_i = 0 gives [X1, X2] != 0.
    """
    from .scalars import field_from_spec

    fld = base_field or field_from_spec("F2")
    if fld.characteristic != 2:
        raise MatrixLabError("wrong characteristic: need 2")
    ring = LaurentRing(fld)
    ctx = MatrixRingCtx(2, ring)
    rng = random.Random(seed)
    rep = MatrixReport("prop3c-upper", {"samples": samples, "degree_bound": degree_bound,
                                        "seed": seed})
    rep.notes.append(
        "off-diagonal of the second-level bracket carries a factor 2, hence vanishes here; "
        "its exact subscripting is immaterial in characteristic 2"
    )

    def rand_poly():
        out = {}
        for e in range(-degree_bound, degree_bound + 1):
            c = rng.randrange(fld.p)
            if c:
                out[e] = c
        return out

    def rand_skew_scalar():
        h = rand_poly()
        return ring.add(h, ring.involute(h))

    def skew_mat(a, b, c):
        return mat(ctx, [[a, b], [ring.neg(ring.involute(b)), c]])

    for idx in range(samples):
        As = []
        Bs = []
        for _ in range(4):
            As.append(skew_mat(rand_skew_scalar(), rand_poly(), rand_skew_scalar()))
            Bs.append(skew_mat(rand_skew_scalar(), rand_poly(), rand_skew_scalar()))
        Xs = []
        for i in range(4):
            X = mat_bracket(ctx, As[i], Bs[i])
            if X != first_bracket_closed_form(ctx, As[i], Bs[i]):
                rep.failures.append(f"sample {idx}: X_{i + 1} differs from closed form")
            Xs.append(X)
        Y1 = mat_bracket(ctx, Xs[0], Xs[1])
        Y2 = mat_bracket(ctx, Xs[2], Xs[3])
        for name, Y, (Aa, Bb, Ac, Bd) in (("[X1,X2]", Y1, (As[0], Bs[0], As[1], Bs[1])),
                                          ("[X3,X4]", Y2, (As[2], Bs[2], As[3], Bs[3]))):
            if not (ring.is_zero(Y[0][1]) and ring.is_zero(Y[1][0])):
                rep.failures.append(f"sample {idx}: {name} not diagonal")
            if Y[0][0] != diagonal_closed_form(ctx, Aa, Bb, Ac, Bd):
                rep.failures.append(f"sample {idx}: {name} diagonal differs from expansion")
        if not mat_is_zero(ctx, mat_bracket(ctx, Y1, Y2)):
            rep.failures.append(f"sample {idx}: [[X1,X2],[X3,X4]] != 0")
    rep.steps_checked = samples

    # sharpness
    one = ring.one
    x = ring.x()
    A1 = skew_mat(ring.zero, one, ring.zero)
    A2 = skew_mat(ring.zero, x, ring.zero)
    B1 = skew_mat(one, ring.zero, ring.zero)
    B2 = skew_mat(one, ring.zero, ring.zero)
    X1 = mat_bracket(ctx, A1, B1)
    X2 = mat_bracket(ctx, A2, B2)
    sharp = mat_bracket(ctx, X1, X2)
    expected_diag = ring.mul(ring.sub(ring.involute(x), x), one)
    if mat_is_zero(ctx, sharp):
        rep.failures.append("sharpness instance collapsed to zero")
    if sharp[0][0] != expected_diag:
        rep.failures.append("sharpness diagonal is not (x^-1 + x) u1^2")
    rep.notes.append(f"sharpness [X1,X2] diagonal = {ring.to_str(sharp[0][0])}")
    return rep


# ----------------------------------------------------------------------
# corollary checks via flattened spans


def mat_to_vec(ctx: MatrixRingCtx, A) -> dict:
    """Flatten to sparse coordinates: (i, j) for fields, (i, j, exp) for
    Laurent entries, over the base field either way."""
    out = {}
    if ctx.involution_kind == "transpose":
        for i in range(ctx.n):
            for j in range(ctx.n):
                if not ctx.ring.is_zero(A[i][j]):
                    out[(i, j)] = A[i][j]
    else:
        for i in range(ctx.n):
            for j in range(ctx.n):
                for e, c in A[i][j].items():
                    out[(i, j, e)] = c
    return out


def vec_to_mat(ctx: MatrixRingCtx, vec: dict):
    rows = [[ctx.ring.zero for _ in range(ctx.n)] for _ in range(ctx.n)]
    if ctx.involution_kind == "transpose":
        for (i, j), c in vec.items():
            rows[i][j] = c
    else:
        for (i, j, e), c in vec.items():
            cell = dict(rows[i][j])
            cell[e] = c
            rows[i][j] = cell
    return mat(ctx, rows)


def matrix_span(ctx: MatrixRingCtx, matrices) -> Subspace:
    fld = ctx.ring.field if isinstance(ctx.ring, LaurentRing) else ctx.ring
    s = Subspace(fld)
    for M in matrices:
        s.insert(mat_to_vec(ctx, M))
    return s


def matrix_pair_op(ctx: MatrixRingCtx):
    def op(a: dict, b: dict) -> dict:
        return mat_to_vec(ctx, mat_bracket(ctx, vec_to_mat(ctx, a), vec_to_mat(ctx, b)))

    return op


def corollary_field_check(fld, depth: int = 10) -> MatrixReport:
    """Skew 2x2 matrices over a field: abelian when the characteristic is not
    2; solvable of index exactly 2 but never nilpotent in characteristic 2."""
    ctx = MatrixRingCtx(2, fld)
    S0 = matrix_span(ctx, skew_matrix_basis(ctx))
    op = matrix_pair_op(ctx)
    rep = MatrixReport("cor-field", {"field": repr(fld), "depth": depth})
    der = derived_series(S0, op, depth)
    if fld.characteristic != 2:
        if der.vanished_at != 1:
            rep.failures.append(f"expected the skew part to be abelian, dims {der.dims}")
    else:
        if der.vanished_at != 2:
            rep.failures.append(f"expected solvability index 2, dims {der.dims}")
        low = lower_central_series(S0, op, depth)
        if low.vanished_at is not None or not all(d > 0 for d in low.dims):
            rep.failures.append(f"lower central series died, dims {low.dims}")
    rep.steps_checked = depth
    rep.notes.append(f"derived dims: {der.dims}")
    return rep


def corollary_laurent_check(fld, degree_bound: int = 2, depth: int = 8) -> MatrixReport:
    """Skew 2x2 matrices over K[x, x^-1]: characteristic 2 gives solvability
    index exactly 3 and no nilpotency; otherwise the derived series of the
    degree-bounded span stays nonzero (the witness recursion is the proof)."""
    ring = LaurentRing(fld)
    ctx = MatrixRingCtx(2, ring)
    S0 = matrix_span(ctx, skew_matrix_basis(ctx, degree_bound))
    op = matrix_pair_op(ctx)
    rep = MatrixReport("cor-laurent", {"field": repr(fld), "degree_bound": degree_bound,
                                       "depth": depth})
    if fld.characteristic == 2:
        der = derived_series(S0, op, depth)
        if der.vanished_at != 3:
            rep.failures.append(f"expected solvability index 3, dims {der.dims}")
        low = lower_central_series(S0, op, depth)
        if low.vanished_at is not None or not all(d > 0 for d in low.dims):
            rep.failures.append(f"lower central series died, dims {low.dims}")
    else:
        # Entry degrees double per derived step; keep the span probe shallow
        # and let the witness recursion carry the depth.
        der = derived_series(S0, op, min(depth, 4))
        if der.vanished_at is not None:
            rep.failures.append(f"derived series vanished at {der.vanished_at}; "
                                "the degree-bounded span should stay nonzero")
        u = ring.sub(ring.x(), ring.x_inv())
        inner = witness_laurent_nonsolvable(ring, u, max(depth, 6))
        rep.failures.extend(f"witness: {f}" for f in inner.failures)
    rep.steps_checked = depth
    rep.notes.append(f"derived dims: {der.dims}")
    return rep
