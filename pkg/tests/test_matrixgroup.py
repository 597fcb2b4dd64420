from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flatbundles.errors import (
    CapExceeded,
    CtxMismatch,
    NoRootFound,
    ShapeMismatch,
    SingularGenerator,
    SingularMatrix,
    UnsupportedClass,
)
from flatbundles.exactfield import field_make
from flatbundles.matrixgroup import (
    DISTINCT,
    NOT_FOUND,
    WITNESS,
    Matrix,
    block_diag,
    charpoly,
    conjugacy_witness,
    group_closure,
    intertwiner_basis,
    is_semisimple,
    is_unipotent,
    jordan_multiplicative,
    matrix_root,
    minimal_polynomial,
    poly_at,
)

from conftest import random_invertible, random_matrix, rng_for

Q = field_make("Q")
F2 = field_make("F(2)")
F3 = field_make("F(3)")


def M(ctx, rows):
    return Matrix.of(ctx, rows)


def test_closure_examples():
    assert group_closure([M(Q, [[0, -1], [1, 0]])]).order == 4
    assert group_closure([M(F2, [[0, 1], [1, 1]])]).order == 3
    with pytest.raises(CapExceeded):
        group_closure([M(Q, [[1, 1], [0, 1]])])


def test_closure_of_gl2_f2_and_sl2_f3():
    gl = group_closure([M(F2, [[1, 1], [0, 1]]), M(F2, [[0, 1], [1, 0]])])
    assert gl.order == 6 and gl.check_axioms()
    sl = group_closure([M(F3, [[1, 1], [0, 1]]), M(F3, [[1, 0], [1, 1]])])
    assert sl.order == 24 and sl.check_axioms()


def test_closure_cap_and_errors():
    with pytest.raises(CapExceeded):
        group_closure([M(F3, [[1, 1], [0, 1]]), M(F3, [[1, 0], [1, 1]])], cap=10)
    with pytest.raises(SingularGenerator):
        group_closure([M(Q, [[1, 1], [1, 1]])])
    with pytest.raises(CtxMismatch):
        group_closure([M(F2, [[1]]), M(F3, [[1]])])


def test_infinite_order_semisimple_over_q_detected():
    with pytest.raises(CapExceeded):
        group_closure([M(Q, [[2, 0], [0, 1]])])


def test_finite_order_rational_matrices():
    # order-6 rotation companion matrix of x^2 - x + 1
    assert group_closure([M(Q, [[0, -1], [1, 1]])]).order == 6
    # signed permutations of 3 letters: hyperoctahedral group of order 48
    gens = [M(Q, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]), M(Q, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]), M(Q, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])]
    G = group_closure(gens)
    assert G.order == 48 and G.check_axioms()


@settings(max_examples=8)
@given(st.integers(0, 10**6))
def test_closure_axioms_random_small_groups(seed):
    rng = rng_for(seed)
    gens = [random_invertible(F2, 3, rng) for _ in range(2)]
    G = group_closure(gens)
    assert G.order <= 168 and 168 % G.order == 0
    assert G.check_axioms()


def test_intertwiner_examples():
    I = Matrix.identity(Q, 3)
    assert len(intertwiner_basis([I], [I])) == 9
    assert len(intertwiner_basis([M(Q, [[1, 1], [0, 1]])], [M(Q, [[1, 2], [0, 1]])])) == 2
    basis = intertwiner_basis([M(Q, [[1, 0], [0, 2]])], [M(Q, [[2, 0], [0, 1]])])
    assert len(basis) == 2
    for t in basis:
        assert t[0, 0] == 0 and t[1, 1] == 0


def test_intertwiner_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        intertwiner_basis([Matrix.identity(Q, 2)], [Matrix.identity(Q, 2), Matrix.identity(Q, 2)])
    with pytest.raises(ShapeMismatch):
        intertwiner_basis([Matrix.identity(Q, 2)], [Matrix.identity(Q, 3)])


def test_conjugacy_examples():
    A, B = M(Q, [[1, 1], [0, 1]]), M(Q, [[1, 2], [0, 1]])
    res = conjugacy_witness([A], [B])
    assert res.status == WITNESS
    T = res.witness
    assert T * A * T.inverse() == B
    assert conjugacy_witness([A], [Matrix.identity(Q, 2)]).status == DISTINCT
    same = conjugacy_witness([A, B], [A, B])
    assert same.status == WITNESS and same.witness.is_identity()


def test_conjugacy_distinct_by_exhaustion_over_finite_field():
    # same characteristic polynomial, different Jordan type: exhaustive search proves it
    A = M(F3, [[1, 1], [0, 1]])
    res = conjugacy_witness([A], [Matrix.identity(F3, 2)])
    assert res.status == DISTINCT
    # a pair that is not simultaneously conjugate although each entry is
    X, Y = M(F3, [[1, 1], [0, 1]]), M(F3, [[1, 0], [1, 1]])
    res = conjugacy_witness([X, X], [X, Y])
    assert res.status == DISTINCT


@given(st.sampled_from(["Q", "F(5)", "F(2, x^2+x+1)"]), st.integers(0, 10**6))
def test_conjugate_tuples_get_certified_witness(spec, seed):
    k = field_make(spec)
    rng = rng_for(seed)
    A = [random_invertible(k, 3, rng) for _ in range(2)]
    P = random_invertible(k, 3, rng)
    B = [P * a * P.inverse() for a in A]
    res = conjugacy_witness(A, B, seed=seed)
    assert res.status in (WITNESS, NOT_FOUND)
    if res.status == WITNESS:
        T = res.witness
        assert all(T * a * T.inverse() == b for a, b in zip(A, B))
    if k.is_finite:
        assert res.status == WITNESS


def test_charpoly_and_minimal_polynomial():
    A = M(Q, [[2, 1], [0, 2]])
    assert charpoly(A) == [Fraction(4), Fraction(-4), Fraction(1)]
    assert minimal_polynomial(A) == charpoly(A)
    assert minimal_polynomial(M(Q, [[3, 0], [0, 3]])) == [Fraction(-3), Fraction(1)]
    assert poly_at(charpoly(A), A).is_zero()


def test_jordan_examples():
    s, u = jordan_multiplicative(M(Q, [[2, 1], [0, 2]]))
    assert s == M(Q, [[2, 0], [0, 2]])
    assert u == M(Q, [["1", "1/2"], [0, 1]])
    D = M(Q, [[1, 0], [0, 3]])
    assert jordan_multiplicative(D) == (D, Matrix.identity(Q, 2))
    I = Matrix.identity(Q, 3)
    assert jordan_multiplicative(I) == (I, I)
    with pytest.raises(SingularMatrix):
        jordan_multiplicative(M(Q, [[0, 1], [0, 0]]))


def test_jordan_in_characteristic_two_with_inseparable_looking_charpoly():
    # charpoly (x+1)^2 over F_2 has zero derivative
    s, u = jordan_multiplicative(M(F2, [[1, 1], [0, 1]]))
    assert s.is_identity() and u == M(F2, [[1, 1], [0, 1]])


@given(st.sampled_from(["Q", "F(2)", "F(3)", "F(2, x^2+x+1)"]), st.integers(0, 10**6))
def test_jordan_properties(spec, seed):
    k = field_make(spec)
    rng = rng_for(seed)
    A = random_invertible(k, 3, rng)
    s, u = jordan_multiplicative(A)
    assert s * u == A and u * s == A
    assert is_unipotent(u) and is_semisimple(s)


def test_matrix_root_examples():
    N = matrix_root(M(Q, [[4, 0], [0, 9]]), 2)
    assert N * N == M(Q, [[4, 0], [0, 9]])
    I = Matrix.identity(Q, 2)
    assert matrix_root(I, 5) == I
    with pytest.raises(NoRootFound):
        matrix_root(M(Q, [[3]]), 2)


def test_matrix_root_conjugated_diagonal():
    P = M(Q, [[1, 2], [1, 3]])
    A = P * M(Q, [[16, 0], [0, 81]]) * P.inverse()
    N = matrix_root(A, 4)
    assert N.power(4) == A


def test_matrix_root_unsupported_and_negative():
    with pytest.raises(UnsupportedClass):
        matrix_root(M(Q, [[1, 1], [0, 1]]), 2)
    with pytest.raises(UnsupportedClass):
        matrix_root(M(Q, [[0, -1], [1, 0]]), 2)
    with pytest.raises(NoRootFound):
        matrix_root(M(Q, [[-4]]), 2)
    assert matrix_root(M(Q, [[-8]]), 3) == M(Q, [[-2]])
    with pytest.raises(SingularMatrix):
        matrix_root(M(Q, [[0]]), 2)


def test_matrix_root_finite_field():
    F7 = field_make("F(7)")
    with pytest.raises(NoRootFound):
        matrix_root(M(F7, [[2]]), 3)  # cubes mod 7 are 0, 1, 6
    with pytest.raises(NoRootFound):
        matrix_root(M(F7, [[3]]), 2)  # 3 is a non-residue mod 7
    N = matrix_root(M(F7, [[2]]), 2)  # 3^2 = 2 mod 7
    assert N * N == M(F7, [[2]])


def test_matrix_helpers():
    A = M(Q, [[1, 2], [3, 4]])
    B = block_diag(A, M(Q, [[5]]))
    assert B.n == 3 and B[2, 2] == 5
    assert A.kron(Matrix.identity(Q, 2)).n == 4
    assert A.transpose().transpose() == A
    assert A.power(-1) == A.inverse()
    assert (A * 2) == A + A
