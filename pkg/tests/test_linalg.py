from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from purity import linalg
from purity.linalg import (LinAlgError, identity, inverse, is_positive_definite,
                           mat, matmul, rank, rank_kernel, symmetric_signature)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def square(n):
    return st.lists(st.lists(fractions, min_size=n, max_size=n),
                    min_size=n, max_size=n)


def test_rank_kernel_examples():
    r, k = rank_kernel(identity(3))
    assert r == 3 and k == []
    r, k = rank_kernel(mat([[0, 0], [0, 0]]))
    assert r == 0 and len(k) == 2
    r, k = rank_kernel(mat([[1, 2], [2, 4]]))
    assert r == 1 and len(k) == 1
    v = k[0]
    assert v[0] * 1 + v[1] * 2 == 0   # proportional to (2, -1)


def test_signature_examples():
    s = symmetric_signature(mat([[1, 0, 0], [0, -1, 0], [0, 0, 0]]))
    assert (s.n_plus, s.n_minus, s.n_zero) == (1, 1, 1) and s.signature == 0
    s = symmetric_signature(mat([[2, 0], [0, 3]]))
    assert (s.n_plus, s.n_minus, s.n_zero) == (2, 0, 0)
    s = symmetric_signature(mat([[0, 1], [1, 0]]))
    assert (s.n_plus, s.n_minus, s.n_zero) == (1, 1, 0)


def test_positive_definite_examples():
    assert is_positive_definite(mat([[2, 1], [1, 2]]))
    assert not is_positive_definite(mat([[1, 2], [2, 1]]))
    assert is_positive_definite([])
    with pytest.raises(LinAlgError):
        is_positive_definite(mat([[1, 2], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_kernel_vectors_are_exact(rows):
    m = mat(rows)
    r, kernel = rank_kernel(m)
    assert r + len(kernel) == 3
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=40, deadline=None)
@given(square(3), square(3))
def test_signature_invariant_under_congruence(g_rows, p_rows):
    g = mat(g_rows)
    g = [[g[i][j] + g[j][i] for j in range(3)] for i in range(3)]  # symmetrize
    p = mat(p_rows)
    if rank(p) != 3:
        return
    before = symmetric_signature(g)
    after = symmetric_signature(matmul(linalg.transpose(p), matmul(g, p)))
    assert (before.n_plus, before.n_minus, before.n_zero) == \
        (after.n_plus, after.n_minus, after.n_zero)


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_positive_definite_iff_full_positive_inertia(rows):
    g = mat(rows)
    g = [[g[i][j] + g[j][i] for j in range(3)] for i in range(3)]
    s = symmetric_signature(g)
    assert is_positive_definite(g) == ((s.n_plus, s.n_minus, s.n_zero) == (3, 0, 0))


def test_solve_and_inverse():
    a = mat([[2, 1], [1, 1]])
    ainv = inverse(a)
    assert matmul(a, ainv) == identity(2)
    with pytest.raises(LinAlgError):
        inverse(mat([[1, 2], [2, 4]]))


def test_rank_fraction_free_matches_rref():
    m = mat([[Fraction(1, 2), 2, 3], [1, 4, 6], [0, 1, 1]])
    red, pivots = linalg.rref(m)
    assert rank(m) == len(pivots) == 2


def test_subspace_calculus():
    a = mat([[1, 0], [0, 1], [0, 0]])
    b = mat([[1], [1], [1]])
    s = linalg.subspace_sum(a, b)
    assert linalg.rank(s) == 3
    inter = linalg.subspace_intersection(a, b)
    assert linalg.rank(inter) == 0
    c = mat([[1], [1], [0]])
    inter2 = linalg.subspace_intersection(a, c)
    assert linalg.rank(inter2) == 1
    assert linalg.subspace_leq(c, a)
    assert not linalg.subspace_leq(b, a)
