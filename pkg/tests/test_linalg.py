from fractions import Fraction

import pytest

from cobcalc.linalg import (
    Lattice,
    canonical_sign,
    clear_denominators,
    kernel_int,
    mat_inverse_int,
    mat_mul_vec,
    primitive,
    rank_int,
    rref_rational,
    solve_rational,
    span_equal_int,
    span_equal_rational,
    unimodular_with_first_column,
)


def test_canonical_sign():
    assert canonical_sign((0, -2, 1)) == (0, 2, -1)
    assert canonical_sign((1, -1)) == (1, -1)
    assert canonical_sign((0, 0)) == (0, 0)


def test_clear_denominators():
    assert clear_denominators([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    assert clear_denominators([2, -1]) == (2, -1)


def test_kernel_is_saturated():
    # 2x - 2y = 0 has primitive kernel generator (1, 1), not (2, 2)
    basis = kernel_int([[2, -2]], 2)
    assert basis == [(1, 1)]
    # x + y + z = 0, x - z = 0
    basis = kernel_int([[1, 1, 1], [1, 0, -1]], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == v[2] and v[1] == -2 * v[0] and abs(v[0]) == 1


def test_kernel_empty_system():
    basis = kernel_int([], 2)
    assert sorted(basis) == [(0, 1), (1, 0)]


def test_rank():
    assert rank_int([(1, 2), (2, 4)]) == 1
    assert rank_int([(1, 0), (0, 1), (1, 1)]) == 2
    assert rank_int([]) == 0
    assert rank_int([(0, 0)]) == 0


def test_lattice_membership():
    lat = Lattice([(2, 0), (0, 1)], 2)
    assert lat.contains((2, 5))
    assert not lat.contains((1, 0))
    assert lat.contains((0, 0))
    assert lat.rank() == 2


def test_span_equal_int_detects_index():
    assert not span_equal_int([(2, 0), (0, 1)], [(1, 0), (0, 1)], 2)
    assert span_equal_int([(1, 1), (0, 1)], [(1, 0), (0, 1)], 2)


def test_span_equal_rational():
    assert span_equal_rational([(2, 0), (0, 3)], [(1, 0), (0, 1)], 2)
    assert not span_equal_rational([(1, 0)], [(0, 1)], 2)


def test_rref_canonical():
    got = rref_rational([(2, 4, 0), (1, 2, 1)])
    assert got == [
        (Fraction(1), Fraction(2), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    ]


def test_solve_rational():
    x = solve_rational([[2, 1], [1, -1]], [5, 1])
    assert x == [Fraction(2), Fraction(1)]
    assert solve_rational([[1, 1], [1, 1]], [0, 1]) is None


@pytest.mark.parametrize(
    "alpha", [(1,), (2, 1), (1, -1), (3, -2, 6), (0, 1, 0), (5, 7)]
)
def test_unimodular_completion(alpha):
    u = unimodular_with_first_column(alpha)
    n = len(alpha)
    assert mat_mul_vec(u, tuple(1 if i == 0 else 0 for i in range(n))) == alpha
    uinv = mat_inverse_int(u)  # raises unless determinant is a unit
    prod = [
        [sum(u[i][k] * uinv[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    assert prod == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def test_unimodular_requires_primitive():
    with pytest.raises(ValueError):
        unimodular_with_first_column((2, 4))


def test_primitive():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((0, 3)) == (0, 1)
