import pytest
from hypothesis import given, strategies as st

from edskit.arith import (
    icbrt, is_cube_term, is_perfect_square, is_square_term, isqrt, pell_fundamental, pell_solutions,
)
from edskit.errors import ParameterError, PellModulusError


@pytest.mark.parametrize("n, root", [(0, 0), (36, 6), (35, 5), (1, 1), (10 ** 40, 10 ** 20)])
def test_isqrt_examples(n, root):
    assert isqrt(n) == root


def test_isqrt_rejects_negative():
    with pytest.raises(ParameterError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=2 ** 256))
def test_isqrt_brackets(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2


@given(st.integers(min_value=-(2 ** 400), max_value=2 ** 400))
def test_icbrt_is_floor(n):
    c = icbrt(n)
    assert c ** 3 <= n < (c + 1) ** 3


def test_icbrt_on_large_cube():
    c = 3 ** 5000 + 17
    assert icbrt(c ** 3) == c
    assert icbrt(c ** 3 - 1) == c - 1
    assert icbrt(-(c ** 3)) == -c


def test_square_terms_follow_sign_blind_rule():
    assert is_square_term(36)
    assert is_square_term(-36)
    assert not is_square_term(0)
    assert not is_square_term(35)
    assert not is_perfect_square(-36)


@given(st.integers(min_value=-(10 ** 30), max_value=10 ** 30))
def test_square_term_symmetric(n):
    assert is_square_term(n) == is_square_term(-n)


def test_cube_terms_keep_sign():
    assert is_cube_term(-27)
    assert is_cube_term(8)
    assert not is_cube_term(4)
    assert not is_cube_term(0)
    assert not is_cube_term(-4)


@given(st.integers(min_value=-(10 ** 12), max_value=10 ** 12).filter(lambda k: k != 0))
def test_cubes_detected(k):
    assert is_cube_term(k ** 3)
    assert not is_cube_term(k ** 3 + 1)  # 0 for k = -1, not a cube otherwise


def test_small_range_against_enumeration():
    squares = {k * k for k in range(1, 60)}
    cubes = {k ** 3 for k in range(-20, 21) if k}
    for n in range(-3000, 3001):
        assert is_square_term(n) == (abs(n) in squares)
        assert is_cube_term(n) == (n in cubes)


def test_pell_examples():
    assert pell_solutions(8, 2) == [(3, 1), (17, 6)]
    assert pell_solutions(8, 3)[-1] == (99, 35)
    assert pell_solutions(3, 1) == [(2, 1)]
    assert pell_fundamental(61) == (1766319049, 226153980)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 8, 13, 19, 61, 94, 109, 991])
def test_pell_solutions_satisfy_equation(d):
    sols = pell_solutions(d, 6)
    assert all(x * x - d * y * y == 1 and x > 0 and y > 0 for x, y in sols)
    assert [x for x, _ in sols] == sorted({x for x, _ in sols})


@pytest.mark.parametrize("d", [2, 3, 5, 7, 8, 13, 19, 94])
def test_pell_fundamental_is_smallest(d):
    y = 1
    while not is_perfect_square(d * y * y + 1):
        y += 1
    assert pell_solutions(d, 1)[0] == (isqrt(d * y * y + 1), y)


@pytest.mark.parametrize("d", [0, -5, 1, 4, 49])
def test_pell_rejects_bad_modulus(d):
    with pytest.raises(PellModulusError):
        pell_solutions(d, 2)


def test_pell_rejects_bad_count():
    with pytest.raises(ParameterError):
        pell_solutions(8, 0)
