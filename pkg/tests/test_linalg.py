import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from akc.errors import PreconditionError
from akc.linalg import Matrix, Subspace, image, intersect, kernel, quotient, rref, solve, sum_spaces
from akc.scalar import I, ONE, ZERO

from conftest import iwasawa


def leibniz_det(rows):
    """Determinant from the permutation expansion; independent of elimination."""
    n = len(rows)
    total = ZERO
    for p in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if p[i] > p[j])
        term = ONE
        for i in range(n):
            term = term * rows[i][p[i]]
            if not term:
                break
        total = total + (-term if inv % 2 else term)
    return total


def rand_gauss(rng):
    return rng.randint(-3, 3) + rng.randint(-2, 2) * I


def rand_matrix(rng, r, c):
    return Matrix([[rand_gauss(rng) for _ in range(c)] for _ in range(r)])


def test_rref_example():
    m = Matrix([[2, 4, 2], [1, 2, 3], [0, 0, 1]])
    red, piv, rank = rref(m)
    assert piv == (0, 2) and rank == 2
    assert red.rows[0] == (1, 2, 0) and red.rows[1] == (0, 0, 1)
    assert red.rows[2] == (0, 0, 0)


def test_rank_against_minor_oracle():
    rng = random.Random(20120601)
    for _ in range(6):
        while True:
            A = rand_matrix(rng, 8, 4) @ rand_matrix(rng, 4, 8)
            # a nonzero 4x4 minor certifies rank >= 4; the factorisation certifies <= 4
            r = rng.sample(range(8), 4)
            c = rng.sample(range(8), 4)
            if leibniz_det([[A[i, j] for j in c] for i in r]):
                break
        assert A.rank() == 4
        assert kernel(A).dim == 4 and image(A).dim == 4


def test_det_matches_leibniz():
    rng = random.Random(3)
    for n in range(1, 6):
        A = rand_matrix(rng, n, n)
        assert A.det() == leibniz_det(A.rows)
        if A.det():
            assert A @ A.inverse() == Matrix.identity(n)


def test_kernel_image_and_rank_nullity():
    rng = random.Random(11)
    for _ in range(30):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = rand_matrix(rng, r, 2) @ rand_matrix(rng, 2, c) if rng.random() < 0.5 else rand_matrix(rng, r, c)
        K = kernel(A)
        assert all(not any(A.apply(v)) for v in K.basis)
        assert K.dim + image(A).dim == c
        assert image(A).dim == A.rank() == A.transpose().rank()


def test_iwasawa_first_differential_kernel():
    el = iwasawa().elaborated
    from akc.cealgebra import CEComplex

    c = CEComplex(el.algebra)
    assert kernel(c.d_matrix(1)).dim == 4


def rand_subspace(rng, n, k):
    return Subspace(n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)])


def test_modular_law():
    rng = random.Random(20120601)
    for _ in range(200):
        n = rng.randint(1, 6)
        A, B, C = (rand_subspace(rng, n, rng.randint(0, n)) for _ in range(3))
        AC = sum_spaces(A, C)  # A is contained in A + C
        assert intersect(AC, sum_spaces(A, B)) == sum_spaces(A, intersect(AC, B))
        assert sum_spaces(A, B).dim + intersect(A, B).dim == A.dim + B.dim


def test_canonical_basis_independent_of_spanning_set():
    rng = random.Random(5)
    for _ in range(50):
        S = rand_subspace(rng, 5, 3)
        T = Matrix([[rng.randint(-2, 2) for _ in range(S.dim)] for _ in range(S.dim + 2)])
        mixed = [tuple(sum((T[i, j] * S.basis[j][k] for j in range(S.dim)), ZERO) for k in range(5)) for i in range(T.nrows)]
        if Subspace(5, mixed).dim == S.dim:
            assert Subspace(5, mixed) == S


def test_quotient():
    full = Subspace.full(3)
    sub = Subspace(3, [(1, 1, 0)])
    q = quotient(full, sub)
    assert q.dim == 2
    assert q.is_zero_class((2, 2, 0))
    v = (1, 2, 3)
    assert q.coordinates(q.lift(q.coordinates(v))) == q.coordinates(v)
    # the section vanishes on the denominator's pivot
    assert all(s[sub.pivots[0]] == 0 for s in q.section)
    with pytest.raises(PreconditionError):
        quotient(sub, full)


def test_solve():
    A = Matrix([[1, 1, 0], [0, 1, 1]])
    x = solve(A, (2, 3))
    assert A.apply(x) == (2, 3) and x[2] == 0
    assert solve(Matrix([[1, 1], [1, 1]]), (0, 1)) is None


@settings(max_examples=50)
@given(st.integers(0, 10**6))
def test_intersection_is_largest_common_subspace(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    A, B = rand_subspace(rng, n, rng.randint(0, n)), rand_subspace(rng, n, rng.randint(0, n))
    X = intersect(A, B)
    assert X.is_subspace_of(A) and X.is_subspace_of(B)
    for v in A.basis:
        if B.contains(v):
            assert X.contains(v)
