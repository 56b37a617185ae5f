"""Exact matrix operations over each field kind."""

import random

import pytest

from maslov.errors import SingularInput
from maslov.fields import FieldCtx
from maslov.linalg import Matrix

CTXS = [
    FieldCtx("Q"),
    FieldCtx("Fp", p=5),
    FieldCtx("Fp2", p=3),
    FieldCtx("QSqrt", d=-1),
]


def random_matrix(ctx, m, n, rng):
    return Matrix(ctx, [[ctx.random_element(rng, 3) for _ in range(n)]
                        for _ in range(m)])


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
def test_inverse_and_det(ctx):
    rng = random.Random(1)
    found = 0
    while found < 15:
        m = random_matrix(ctx, 3, 3, rng)
        if not m.is_invertible():
            continue
        found += 1
        assert m * m.inverse() == Matrix.identity(ctx, 3)
        assert m.inverse() * m == Matrix.identity(ctx, 3)
        assert m.det() * m.inverse().det() == ctx.one()


def test_singular_inverse_raises():
    ctx = FieldCtx("Q")
    with pytest.raises(SingularInput):
        Matrix(ctx, [[1, 2], [2, 4]]).inverse()


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
def test_rank_and_kernel(ctx):
    rng = random.Random(2)
    for _ in range(15):
        m = random_matrix(ctx, 3, 4, rng)
        k = m.kernel()
        assert m.rank() + len(k) == 4
        for v in k:
            col = Matrix(ctx, [[e] for e in v])
            assert (m * col).is_zero()


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
def test_column_space_canonical_is_span_invariant(ctx):
    rng = random.Random(3)
    for _ in range(15):
        m = random_matrix(ctx, 4, 2, rng)
        if m.rank() != 2:
            continue
        g = random_matrix(ctx, 2, 2, rng)
        if not g.is_invertible():
            continue
        assert (m.column_space_canonical()
                == (m * g).column_space_canonical())


def test_jt_is_antimultiplicative():
    ctx = FieldCtx("QSqrt", d=-1)
    rng = random.Random(4)
    a = random_matrix(ctx, 2, 2, rng)
    b = random_matrix(ctx, 2, 2, rng)
    assert (a * b).jt() == b.jt() * a.jt()


def test_block_assembly():
    ctx = FieldCtx("Q")
    eye = Matrix.identity(ctx, 2)
    zero = Matrix.zeros(ctx, 2, 2)
    h = Matrix.block2(zero, eye.scale(ctx.from_int(-1)), eye, zero)
    assert h.rows[0][2] == -1
    assert h.rows[2][0] == 1
    assert h.det() == 1
