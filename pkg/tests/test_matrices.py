"""Matrix involution, skew bases, and the witness recursions."""

import random
from fractions import Fraction

import pytest

from lpalab import (
    LaurentRing,
    MatrixLabError,
    MatrixRingCtx,
    char2_laurent_index3_check,
    corollary_field_check,
    corollary_laurent_check,
    field_from_spec,
    mat_involution,
    skew_matrix_basis,
    witness_laurent_nonsolvable,
    witness_nge3,
    witness_nilpotent_char2,
)
from lpalab.matrices import (
    diagonal_closed_form,
    first_bracket_closed_form,
    mat,
    mat_bracket,
    mat_mul,
    zero_mat,
)

Q = field_from_spec("Q")
F2 = field_from_spec("F2")
F3 = field_from_spec("F3")


def test_mat_involution_transpose():
    ctx = MatrixRingCtx(2, Q)
    A = mat(ctx, [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
    assert mat_involution(ctx, A) == mat(ctx, [[Fraction(1), Fraction(3)],
                                               [Fraction(2), Fraction(4)]])


def test_mat_involution_laurent():
    ring = LaurentRing(Q)
    ctx = MatrixRingCtx(2, ring)
    A = mat(ctx, [[ring.x(), ring.zero], [ring.zero, ring.zero]])
    B = mat_involution(ctx, A)
    assert B[0][0] == ring.x_inv() and B[0][1] == ring.zero


def test_mat_involution_is_involutive_antihomomorphism():
    rng = random.Random(3)
    ring = LaurentRing(F3)
    for ctx in (MatrixRingCtx(2, Q), MatrixRingCtx(3, F3), MatrixRingCtx(2, ring)):
        for _ in range(40):
            A = _rand_mat(ctx, rng)
            B = _rand_mat(ctx, rng)
            assert mat_involution(ctx, mat_involution(ctx, A)) == A
            assert mat_involution(ctx, mat_mul(ctx, A, B)) == mat_mul(
                ctx, mat_involution(ctx, B), mat_involution(ctx, A))


def _rand_mat(ctx, rng):
    ring = ctx.ring
    if isinstance(ring, LaurentRing):
        def entry():
            out = {}
            for e in range(-2, 3):
                c = rng.randrange(ring.field.p) if ring.field.characteristic else \
                    Fraction(rng.randint(-3, 3))
                if not ring.field.is_zero(c):
                    out[e] = c
            return out
    else:
        def entry():
            if ring.characteristic == 0:
                return Fraction(rng.randint(-5, 5))
            return rng.randrange(ring.p)
    return mat(ctx, [[entry() for _ in range(ctx.n)] for _ in range(ctx.n)])


def test_skew_basis_field():
    ctx = MatrixRingCtx(2, Q)
    basis = skew_matrix_basis(ctx)
    assert len(basis) == 1
    assert basis[0] == mat(ctx, [[Q.zero, Q.one], [Fraction(-1), Q.zero]])

    ctx2 = MatrixRingCtx(2, F2)
    basis2 = skew_matrix_basis(ctx2)
    assert len(basis2) == 3


def test_skew_basis_laurent_contains_diagonal_skews():
    ring = LaurentRing(Q)
    ctx = MatrixRingCtx(2, ring)
    basis = skew_matrix_basis(ctx, 1)
    target = mat(ctx, [[ring.sub(ring.x(), ring.x_inv()), ring.zero],
                       [ring.zero, ring.zero]])
    assert target in basis


def test_witness_nge3_first_steps():
    ctx = MatrixRingCtx(3, Q)
    one = Q.one
    # m = 1: X = -(E12 - E21) + (E13 - E31)
    A = mat_bracket(ctx,
                    mat(ctx, [[0, 1, 1], [-1, 0, 0], [-1, 0, 0]]),
                    mat(ctx, [[0, 0, 0], [0, 0, 1], [0, -1, 0]]))
    expect = mat(ctx, [[0, -1, 1], [1, 0, 0], [-1, 0, 0]])
    assert A == expect

    rep = witness_nge3(ctx, one, one, one, 2)
    assert rep.ok and rep.steps_checked == 2


def test_witness_nge3_step2_frozen_values():
    # closed forms from (1,1,1): a2 = -1, b2 = -1, c2 = 2, so
    # X2 = 2(E12 - E21) - 2(E13 - E31)
    ctx = MatrixRingCtx(3, Q)
    A1 = mat(ctx, [[0, 1, 1], [-1, 0, 0], [-1, 0, 0]])
    B1 = mat(ctx, [[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    X1 = mat_bracket(ctx, A1, B1)
    A2 = mat_bracket(ctx, X1, B1)
    B2 = mat_bracket(ctx, X1, A1)
    X2 = mat_bracket(ctx, A2, B2)
    assert X2 == mat(ctx, [[0, 2, -2], [-2, 0, 0], [2, 0, 0]])


def test_witness_nge3_long_runs():
    # (1, 0, 1) keeps the closed coefficients periodic, so deep runs stay
    # cheap; (1, 1, 1) squares the coefficient sizes at every step and is
    # exercised shallow.
    rep = witness_nge3(MatrixRingCtx(3, Q), Q.one, Q.zero, Q.one, 20)
    assert rep.ok
    rep = witness_nge3(MatrixRingCtx(3, Q), Q.one, Q.one, Q.one, 8)
    assert rep.ok
    rep = witness_nge3(MatrixRingCtx(3, F3), 1, 0, 1, 20)
    assert rep.ok


def test_witness_nge3_preconditions():
    with pytest.raises(MatrixLabError, match="c = 0"):
        witness_nge3(MatrixRingCtx(3, Q), Q.one, Q.one, Q.zero, 3)
    with pytest.raises(MatrixLabError, match="a\\^2"):
        witness_nge3(MatrixRingCtx(3, field_from_spec("F5")), 1, 2, 1, 3)
    with pytest.raises(MatrixLabError, match="degree"):
        witness_nge3(MatrixRingCtx(2, Q), Q.one, Q.one, Q.one, 3)


def test_witness_nilpotent_char2():
    rep = witness_nilpotent_char2(F2, 10)
    assert rep.ok and rep.steps_checked == 10
    # one step by hand: [A, B] with A = E12 + E21, B = E11 equals A in char 2
    ctx = MatrixRingCtx(2, F2)
    A = mat(ctx, [[0, 1], [1, 0]])
    B = mat(ctx, [[1, 0], [0, 0]])
    assert mat_bracket(ctx, A, B) == A
    with pytest.raises(MatrixLabError, match="characteristic"):
        witness_nilpotent_char2(F3, 3)


def test_witness_laurent_nonsolvable():
    ring = LaurentRing(Q)
    u = ring.sub(ring.x(), ring.x_inv())
    rep = witness_laurent_nonsolvable(ring, u, 6)
    assert rep.ok and rep.steps_checked == 6

    # X1 = [[0, -2u^2], [2u^2, 0]]
    ctx = MatrixRingCtx(2, ring)
    A1 = mat(ctx, [[ring.zero, u], [u, ring.zero]])
    B1 = mat(ctx, [[u, ring.zero], [ring.zero, ring.neg(u)]])
    X1 = mat_bracket(ctx, A1, B1)
    m2u2 = ring.smul(Fraction(-2), ring.mul(u, u))
    assert X1 == mat(ctx, [[ring.zero, m2u2], [ring.neg(m2u2), ring.zero]])

    v2 = ring.smul(Fraction(4), ring.mul(u, ring.mul(u, u)))
    assert not ring.is_zero(v2)

    with pytest.raises(MatrixLabError, match="u = 0"):
        witness_laurent_nonsolvable(ring, ring.zero, 3)
    with pytest.raises(MatrixLabError, match="not skew"):
        witness_laurent_nonsolvable(ring, ring.x(), 3)
    with pytest.raises(MatrixLabError, match="characteristic"):
        witness_laurent_nonsolvable(LaurentRing(F2), u, 3)


def test_char2_laurent_closed_forms_trivial_tuple():
    ring = LaurentRing(F2)
    ctx = MatrixRingCtx(2, ring)
    Z = zero_mat(ctx)
    assert first_bracket_closed_form(ctx, Z, Z) == Z
    assert ring.is_zero(diagonal_closed_form(ctx, Z, Z, Z, Z))


def test_char2_laurent_index3_sample_run():
    rep = char2_laurent_index3_check(60, 3, 42)
    assert rep.ok
    assert any("x^-1 + x" in n or "sharpness" in n for n in rep.notes)
    with pytest.raises(MatrixLabError, match="characteristic"):
        char2_laurent_index3_check(5, 2, 1, Q)


def test_char2_laurent_sharpness_diagonal():
    ring = LaurentRing(F2)
    ctx = MatrixRingCtx(2, ring)
    one, x = ring.one, ring.x()
    A1 = mat(ctx, [[ring.zero, one], [one, ring.zero]])
    A2 = mat(ctx, [[ring.zero, x], [ring.x_inv(), ring.zero]])
    B = mat(ctx, [[one, ring.zero], [ring.zero, ring.zero]])
    X1 = mat_bracket(ctx, A1, B)
    X2 = mat_bracket(ctx, A2, B)
    sharp = mat_bracket(ctx, X1, X2)
    assert sharp[0][0] == ring.add(x, ring.x_inv())
    assert sharp != zero_mat(ctx)


def test_corollary_checks():
    assert corollary_field_check(Q).ok
    assert corollary_field_check(F3).ok
    assert corollary_field_check(F2).ok
    assert corollary_laurent_check(F2, 2, 8).ok
    assert corollary_laurent_check(Q, 2, 4).ok


def test_determinism_same_seed():
    a = char2_laurent_index3_check(25, 2, 7)
    b = char2_laurent_index3_check(25, 2, 7)
    assert a.to_json_obj() == b.to_json_obj()
