from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from rbundles.fields import GF, QQ, FpElement, field_from_tag, is_square, sqrt
from rbundles.linalg import Matrix, det, kernel_basis, rank, same_row_space, solve


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        GF(9)
    assert GF(7) is GF(7)


def test_inverses_exhaustive():
    for p in (3, 5, 7, 11):
        F = GF(p)
        for a in F.nonzero_elements():
            assert a * a.inverse() == 1
            assert F.one / a == a.inverse()


def test_fraction_coercion_mod_p():
    F = GF(7)
    assert F(Fraction(1, 2)) == 4
    assert F("3/2") * 2 == 3
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))


def test_mixed_primes_raise():
    with pytest.raises(TypeError):
        GF(5)(1) + GF(7)(1)


def test_field_tags_round_trip():
    for F in (QQ, GF(5), GF(13)):
        assert field_from_tag(F.tag()) == F
    with pytest.raises(ValueError):
        field_from_tag({"Fp": "x"})


def test_square_roots():
    assert sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt(Fraction(2)) is None
    F = GF(7)
    squares = {int(x * x) for x in F.elements()}
    for x in F.elements():
        assert is_square(x) == (int(x) in squares)
        r = sqrt(x)
        assert (r is not None) == is_square(x)
        if r is not None:
            assert r * r == x


@given(st.integers(), st.integers(), st.integers())
def test_fp_ring_axioms(a, b, c):
    F = GF(11)
    x, y, z = F(a), F(b), F(c)
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x
    assert isinstance(x + 1, FpElement)


def _leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def _minor_rank(rows):
    """Largest k with a nonzero k x k minor (brute force)."""
    from itertools import combinations

    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for r in combinations(range(m), k):
            for c in combinations(range(n), k):
                if _leibniz([[rows[i][j] for j in c] for i in r]):
                    return k
    return 0


small = st.integers(-3, 3)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_matches_minors(rows):
    m = Matrix.from_rows(QQ, rows)
    assert rank(m) == _minor_rank([[Fraction(x) for x in r] for r in rows])
    assert len(kernel_basis(m)) == m.cols - rank(m)
    for v in kernel_basis(m):
        assert not any(m @ v)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_leibniz(rows):
    assert det(Matrix.from_rows(QQ, rows)) == _leibniz(rows)
    F = GF(5)
    assert det(Matrix.from_rows(F, rows)) == F(_leibniz(rows))


def test_solve_consistent_and_inconsistent():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    assert solve(m, [1, 3]) is None
    x = solve(m, [1, 2])
    assert m @ x == (1, 2)


def test_same_row_space():
    a = Matrix.from_rows(QQ, [[1, 0, 1], [0, 1, 1]])
    b = Matrix.from_rows(QQ, [[1, 1, 2], [1, -1, 0]])
    c = Matrix.from_rows(QQ, [[1, 0, 0], [0, 1, 1]])
    assert same_row_space(a, b)
    assert not same_row_space(a, c)
