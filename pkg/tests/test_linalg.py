import itertools
import random
from fractions import Fraction as F

import pytest

from submodcurv.errors import ShapeError, SingularityError
from submodcurv.linalg import (is_positive_definite, leading_principal_minors,
                               mat_det, mat_identity, mat_inverse, mat_mul,
                               mat_rank, mat_solve, nullspace)


def _brute_det(m):
    n = len(m)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = F(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def _random_matrix(rng, n, m=None):
    m = m or n
    return [[F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(m)]
            for _ in range(n)]


def test_det_against_permanent_expansion():
    rng = random.Random(11)
    for _ in range(25):
        a = _random_matrix(rng, 3)
        assert mat_det(a) == _brute_det(a)
    for _ in range(10):
        a = _random_matrix(rng, 4)
        assert mat_det(a) == _brute_det(a)


def test_det_small_cases():
    assert mat_det([[F(5)]]) == 5
    assert mat_det([[F(1), F(2)], [F(3), F(4)]]) == -2
    assert mat_det(mat_identity(4)) == 1


def test_rank_and_nullspace():
    a = [[F(1), F(2), F(3)],
         [F(2), F(4), F(6)],
         [F(1), F(0), F(1)]]
    assert mat_rank(a) == 2
    ns = nullspace(a)
    assert len(ns) == 1
    v = ns[0]
    for row in a:
        assert sum(x * y for x, y in zip(row, v)) == 0

    rng = random.Random(5)
    for _ in range(15):
        b = _random_matrix(rng, 3, 4)
        r = mat_rank(b)
        ns = nullspace(b)
        assert len(ns) == 4 - r
        for v in ns:
            for row in b:
                assert sum(x * y for x, y in zip(row, v)) == 0


def test_solve_round_trip():
    rng = random.Random(3)
    for _ in range(15):
        a = _random_matrix(rng, 3)
        if mat_det(a) == 0:
            continue
        x = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3)]
        b = [sum(a[i][j] * x[j] for j in range(3)) for i in range(3)]
        assert mat_solve(a, b) == x


def test_solve_singular():
    a = [[F(1), F(2)], [F(2), F(4)]]
    with pytest.raises(SingularityError):
        mat_solve(a, [F(1), F(1)])


def test_inverse():
    rng = random.Random(9)
    eye = mat_identity(3)
    for _ in range(10):
        a = _random_matrix(rng, 3)
        if mat_det(a) == 0:
            continue
        assert mat_mul(a, mat_inverse(a)) == eye
        assert mat_mul(mat_inverse(a), a) == eye


def test_principal_minors_and_definiteness():
    a = [[F(2), F(1)], [F(1), F(2)]]
    assert leading_principal_minors(a) == [F(2), F(3)]
    assert is_positive_definite(a)
    assert not is_positive_definite([[F(1), F(2)], [F(2), F(1)]])
    assert is_positive_definite([[F(1), F(0)], [F(0), F(3)]])


def test_shape_checks():
    with pytest.raises(ShapeError):
        mat_det([[F(1), F(2)]])
