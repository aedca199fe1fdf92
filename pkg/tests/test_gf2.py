"""GF(2) linear algebra: pinned examples plus randomized invariants."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalcss.gf2 import (
    ContainmentError,
    Gf2Matrix,
    Gf2Vector,
    kernel_basis,
    matrix_from_text,
    matrix_to_text,
    quotient_dim,
    rank,
    solve,
)


def _random_matrix(rng, rows, cols, density=0.4):
    return Gf2Matrix.from_dense(rng.random((rows, cols)) < density)


def test_rank_identity():
    assert rank(Gf2Matrix.identity(3)) == 3


def test_rank_all_ones():
    assert rank(Gf2Matrix.from_dense(np.ones((2, 2)))) == 1


def test_kernel_of_parity_check():
    m = Gf2Matrix.from_dense([[1, 1]])
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert ker[0].indices() == [0, 1]


def test_kernel_of_identity_is_trivial():
    assert kernel_basis(Gf2Matrix.identity(3)) == []


def test_solve_identity():
    b = Gf2Vector.from_indices(3, [1])
    x = solve(Gf2Matrix.identity(3), b)
    assert x.indices() == [1]


def test_solve_first_pivot_tiebreak():
    x = solve(Gf2Matrix.from_dense([[1, 1]]), Gf2Vector.from_indices(1, [0]))
    assert x.indices() == [0]


def test_solve_unsolvable():
    m = Gf2Matrix.zeros(2, 2)
    assert solve(m, Gf2Vector.from_indices(2, [0])) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(Gf2Matrix.identity(2), Gf2Vector(3))


def test_quotient_dim_trivial_cases():
    space = Gf2Matrix.identity(3)
    sub = space.submatrix([0], range(3))
    assert quotient_dim(space, sub) == 2
    assert quotient_dim(space, space) == 0


def test_quotient_dim_containment_witness():
    space = Gf2Matrix.from_dense([[1, 0, 0]])
    sub = Gf2Matrix.from_dense([[1, 0, 0], [0, 1, 0]])
    with pytest.raises(ContainmentError) as err:
        quotient_dim(space, sub)
    assert err.value.witness_row == 1


def test_rank_nullity_and_transpose_on_200_random_matrices():
    rng = np.random.default_rng(7)
    for _ in range(200):
        rows = int(rng.integers(1, 40))
        cols = int(rng.integers(1, 40))
        m = _random_matrix(rng, rows, cols)
        r = rank(m)
        assert r + len(kernel_basis(m)) == cols
        assert r == rank(m.transpose())
        for v in kernel_basis(m):
            assert m.mul_vec(v).is_zero()


def test_rank_transpose_large():
    rng = np.random.default_rng(11)
    m = _random_matrix(rng, 256, 256, density=0.1)
    assert rank(m) == rank(m.transpose())


def test_solve_roundtrip_random():
    rng = np.random.default_rng(3)
    for _ in range(100):
        rows = int(rng.integers(1, 30))
        cols = int(rng.integers(1, 30))
        m = _random_matrix(rng, rows, cols)
        x_true = Gf2Vector.from_dense(rng.integers(0, 2, cols))
        b = m.mul_vec(x_true)
        x = solve(m, b)
        assert x is not None
        assert m.mul_vec(x) == b


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 16), st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_matmul_matches_dense(rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = _random_matrix(rng, rows, cols)
    b = _random_matrix(rng, cols, rows)
    prod = a.matmul(b)
    ref = (a.to_dense().astype(int) @ b.to_dense().astype(int)) % 2
    assert np.array_equal(prod.to_dense(), ref.astype(np.uint8))


def test_submatrix_and_stack():
    rng = np.random.default_rng(5)
    m = _random_matrix(rng, 9, 70)
    sub = m.submatrix([2, 4, 8], range(3, 69))
    ref = m.to_dense()[[2, 4, 8]][:, 3:69]
    assert np.array_equal(sub.to_dense(), ref)
    st2 = m.vstack(m)
    assert st2.rows == 18 and rank(st2) == rank(m)


def test_vector_ops():
    v = Gf2Vector.from_indices(130, [0, 64, 129])
    w = Gf2Vector.from_indices(130, [64])
    assert v.weight() == 3
    assert (v ^ w).indices() == [0, 129]
    assert v.dot(w) == 1
    assert Gf2Vector(10).weight() == 0


def test_text_roundtrip():
    rng = np.random.default_rng(9)
    m = _random_matrix(rng, 6, 13)
    again = matrix_from_text(matrix_to_text(m))
    assert again == m


def test_torus_boundary_rank_example():
    # d1 of the 2-torus at L=3: 9 vertices, 18 edges, GF(2) rank 8.
    from fractalcss.complexes import build_lattice

    cx = build_lattice(2, 3, "torus")
    d1 = cx.boundary_matrix(1)
    assert (d1.rows, d1.cols) == (9, 18)
    assert rank(d1) == 8
    assert len(kernel_basis(d1)) == 10


def test_quotient_dim_torus_homology_example():
    # cycles modulo boundaries of the 2-torus at L=3 in degree 1: dim = 2
    from fractalcss.complexes import build_lattice
    from fractalcss.gf2 import Gf2Matrix, kernel_basis, quotient_dim

    cx = build_lattice(2, 3, "torus")
    cycles = Gf2Matrix.from_row_vectors(kernel_basis(cx.boundary_matrix(1)), 18)
    boundaries = cx.boundary_matrix(2).transpose()
    assert quotient_dim(cycles, boundaries) == 2
