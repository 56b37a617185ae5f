"""Form predicates, congruence, diagonalization, and isometry."""

import random
from fractions import Fraction

import pytest

from maslov.errors import DegenerateInput, NotHermitian, WrongSymmetry
from maslov.fields import FieldCtx
from maslov.forms import (
    FormMatrix,
    congruence,
    diagonalize,
    is_isometric,
    isometry_key,
    radical_split,
    signature,
)
from maslov.linalg import Matrix
from maslov.sampling import random_hermitian, random_hermitian_invertible, rng_for

Q = FieldCtx("Q")
F5 = FieldCtx("Fp", p=5)
F7 = FieldCtx("Fp", p=7)
F9 = FieldCtx("Fp2", p=3)
QI = FieldCtx("QSqrt", d=-1)

HERM_CTXS = [Q, F5, F9, QI]


def test_symmetry_validation():
    with pytest.raises(NotHermitian):
        FormMatrix(Q, [[0, 1], [2, 0]], 1)
    FormMatrix(Q, [[0, 1], [1, 0]], 1)
    FormMatrix(Q, [[0, -1], [1, 0]], -1)
    # hermitian over Q(i): diagonal must be real, off-diagonal conjugate
    x = QI.parse_scalar(["0", "1"])
    with pytest.raises(NotHermitian):
        FormMatrix(QI, [[x]], 1)
    FormMatrix(QI, [[QI.zero(), x], [-x, QI.zero()]], 1)


def test_congruence_examples():
    t = FormMatrix(Q, [[1]], 1)
    g = Matrix(Q, [[2]])
    assert congruence(t, g).mat == Matrix(Q, [[4]])

    skew = FormMatrix(Q, [[0, -1], [1, 0]], -1)
    assert congruence(skew, Matrix.identity(Q, 2)) == skew

    t = FormMatrix.diagonal_rational(Q, [-1, 3])
    g = Matrix(Q, [[1, 1], [0, 1]])
    assert congruence(t, g).mat == Matrix(Q, [[-1, -1], [-1, 2]])


def test_diagonalize_examples():
    hyp = FormMatrix(Q, [[0, 1], [1, 0]], 1)
    dg = diagonalize(hyp)
    assert dg.radical_dim == 0
    # the hyperbolic plane is isometric to <1, -1>
    assert is_isometric(FormMatrix.diagonal(Q, dg.diag),
                        FormMatrix.diagonal_rational(Q, [1, -1]))

    d = diagonalize(FormMatrix.diagonal_rational(Q, [1, 0, 3]))
    assert sorted(d.diag) == [Fraction(1), Fraction(3)]
    assert d.radical_dim == 1

    z = diagonalize(FormMatrix(Q, Matrix.zeros(Q, 2, 2), 1))
    assert z.diag == () and z.radical_dim == 2


def test_diagonalize_rejects_skew():
    with pytest.raises(WrongSymmetry):
        diagonalize(FormMatrix(Q, [[0, -1], [1, 0]], -1))


@pytest.mark.parametrize("ctx", HERM_CTXS, ids=repr)
def test_diagonalize_witness_exact(ctx):
    for trial in range(125):
        rng = rng_for(11, trial)
        t = random_hermitian(ctx, rng.choice([2, 3]), rng, eps=1)
        dg = diagonalize(t)
        n = t.dim
        expect = Matrix.diagonal(
            ctx, list(dg.diag) + [ctx.zero()] * dg.radical_dim)
        assert dg.transform.jt() * t.mat * dg.transform == expect
        assert len(dg.diag) + dg.radical_dim == n
        assert all(e for e in dg.diag)


def test_is_isometric_examples():
    # explicit witness: g^T [[0,1],[1,0]] g = diag(1,-1)
    g = Matrix(Q, [[1, 1], [Fraction(1, 2), Fraction(-1, 2)]])
    hyp = FormMatrix(Q, [[0, 1], [1, 0]], 1)
    assert congruence(hyp, g).mat == Matrix.diagonal(
        Q, [Q.one(), -Q.one()])
    assert is_isometric(hyp, FormMatrix.diagonal_rational(Q, [1, -1]))

    # 2 = 3^2 mod 7
    assert is_isometric(FormMatrix.diagonal_rational(F7, [1]),
                        FormMatrix.diagonal_rational(F7, [2]))

    assert not is_isometric(FormMatrix.diagonal_rational(Q, [1, 1]),
                            FormMatrix.diagonal_rational(Q, [1, -1]))


def test_is_isometric_rejects_degenerate():
    with pytest.raises(DegenerateInput):
        is_isometric(FormMatrix.diagonal_rational(Q, [1, 0]),
                     FormMatrix.diagonal_rational(Q, [1, 1]))


@pytest.mark.parametrize("ctx", HERM_CTXS, ids=repr)
def test_is_isometric_congruence_invariance(ctx):
    from maslov.sampling import random_invertible

    for trial in range(25):
        rng = rng_for(13, trial)
        t = random_hermitian_invertible(ctx, 2, rng, eps=1)
        g = random_invertible(ctx, 2, rng)
        moved = congruence(t, g)
        assert is_isometric(t, moved)
        assert isometry_key(t) == isometry_key(moved)


def test_is_isometric_equivalence_relation_over_q():
    rng = random.Random(77)
    forms = []
    for _ in range(8):
        entries = [Fraction(rng.choice([1, -1, 2, 3, -6])) for _ in range(2)]
        forms.append(FormMatrix.diagonal_rational(Q, entries))
    for a in forms:
        assert is_isometric(a, a)
        for b in forms:
            assert is_isometric(a, b) == is_isometric(b, a)
            for c in forms:
                if is_isometric(a, b) and is_isometric(b, c):
                    assert is_isometric(a, c)


def test_radical_split_examples():
    nd, rad = radical_split(FormMatrix.diagonal_rational(Q, [1, 0]))
    assert rad == 1 and nd.dim == 1 and nd.mat.rows[0][0] == 1

    nd, rad = radical_split(FormMatrix(Q, Matrix.zeros(Q, 3, 3), 1))
    assert rad == 3 and nd.dim == 0

    # Gram of the three-term sum pairing on (X, Y, X) for the standard
    # rank-1 opposite pair: kernel is 1-dimensional, rest is hyperbolic
    g = Matrix(Q, [[0, Fraction(-1, 2), 0],
                   [Fraction(-1, 2), 0, Fraction(1, 2)],
                   [0, Fraction(1, 2), 0]])
    # brute-force kernel oracle
    assert len(g.kernel()) == 1
    nd, rad = radical_split(FormMatrix(Q, g, 1))
    assert rad == 1
    assert is_isometric(nd, FormMatrix.diagonal_rational(Q, [1, -1]))


def test_radical_split_direct_sum_with_zeros():
    base = FormMatrix.diagonal_rational(Q, [2, -3])
    padded = base.direct_sum(FormMatrix(Q, Matrix.zeros(Q, 2, 2), 1))
    _, rad = radical_split(padded)
    assert rad >= 2


def test_signature():
    assert signature(FormMatrix.diagonal_rational(Q, [1, 1, 1, 1])) == 4
    assert signature(FormMatrix.diagonal_rational(Q, [1, -2, 3])) == 1
    hyp = FormMatrix(Q, [[0, 1], [1, 0]], 1)
    assert signature(hyp) == 0


def test_skew_forms_single_class():
    a = FormMatrix(Q, [[0, -1], [1, 0]], -1)
    b = FormMatrix(Q, [[0, -3], [3, 0]], -1)
    assert is_isometric(a, b)
