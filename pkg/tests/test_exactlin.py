from fractions import Fraction

import pytest

from lorhom3 import exactlin as ex


def test_frac_rejects_floats():
    with pytest.raises(TypeError):
        ex.frac(0.5)


def test_inverse_and_det():
    a = ex.mat([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    inv = ex.inverse(a)
    assert ex.mat_mul(a, inv) == ex.identity(3)
    assert ex.det(a) == 1
    with pytest.raises(ex.SingularMatrix):
        ex.inverse(ex.mat([[1, 2], [2, 4]]))


def test_nullspace_canonical():
    a = ex.mat([[1, 2, 3], [2, 4, 6]])
    basis = ex.nullspace(a)
    assert len(basis) == 2
    for v in basis:
        assert all(x * a[0][0] + 0 == x * 1 for x in [Fraction(0)])
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in a)
        # canonical: integer entries, first nonzero positive
        assert all(x.denominator == 1 for x in v)
        assert next(x for x in v if x != 0) > 0


def test_solve_consistency():
    a = ex.mat([[1, 1], [1, -1], [2, 0]])
    assert ex.solve(a, ex.vec([3, 1, 4])) == ex.vec([2, 1])
    assert ex.solve(a, ex.vec([3, 1, 5])) is None


@pytest.mark.parametrize("gram,sig", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, -1]], (2, 1, 0)),
    ([[1, 0, 0], [0, 0, 1], [0, 1, 0]], (2, 1, 0)),
    ([[0, 1], [1, 0]], (1, 1, 0)),
    ([[0, 0], [0, 0]], (0, 0, 2)),
    ([[1, 0, 0], [0, 1, 0], [0, 0, 0]], (2, 0, 1)),
    ([[-2, 0], [0, -3]], (0, 2, 0)),
])
def test_signature(gram, sig):
    assert ex.signature(ex.mat(gram)) == sig


def test_sqrt_fraction():
    assert ex.sqrt_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert ex.sqrt_fraction(Fraction(2)) is None
    assert ex.sqrt_fraction(Fraction(0)) == 0
    assert ex.sqrt_fraction(Fraction(-1)) is None


def test_char_poly_and_roots():
    a = ex.mat([[2, 1, 0], [0, 2, 0], [0, 0, 5]])
    p = ex.char_poly_3x3(a)
    # (x-2)^2 (x-5) = x^3 - 9x^2 + 24x - 20
    assert p == [Fraction(-20), Fraction(24), Fraction(-9), Fraction(1)]
    roots = sorted(ex.rational_roots(p))
    assert roots == [2, 2, 5]
    g = ex.poly_gcd(p, ex.poly_derivative(p))
    assert ex.poly_degree(g) == 1
    assert ex.rational_roots(g) == [2]


def test_rational_roots_with_denominators():
    # p(x) = 4 (x - 1/2)^2 (x + 3) = 4x^3 + 8x^2 - 11x + 3
    p = [Fraction(3), Fraction(-11), Fraction(8), Fraction(4)]
    assert sorted(ex.rational_roots(p)) == [Fraction(-3), Fraction(1, 2), Fraction(1, 2)]


def test_same_span_and_in_span():
    a = [ex.vec([1, 0, 1]), ex.vec([0, 1, 0])]
    b = [ex.vec([1, 1, 1]), ex.vec([1, -1, 1])]
    assert ex.same_span(a, b)
    assert ex.in_span(ex.vec([2, 3, 2]), a)
    assert not ex.in_span(ex.vec([0, 0, 1]), a)
