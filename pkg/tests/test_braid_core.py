import pytest
from hypothesis import given, strategies as st

from braidgen.braid_core import (
    BraidWord,
    Permutation,
    alpha_power,
    concat,
    conjugate,
    exponent_sum,
    format_word,
    free_reduce,
    invert,
    make_word,
    parse_word,
    permutation_image,
    power,
    shift_conjugate,
    sigma,
)
from braidgen.errors import BadStrandCount, IndexOutOfRange, ParseError, StrandCountMismatch
from braidgen.garside_nf import equal


def w(n, *tokens):
    return make_word(n, list(tokens))


def test_make_word_basic():
    assert w(4, 1, -3).letters == ((1, 1), (3, -1))
    with pytest.raises(IndexOutOfRange):
        w(4, 1, -4)
    with pytest.raises(IndexOutOfRange):
        w(4, 0)
    with pytest.raises(BadStrandCount):
        make_word(1, [])


def test_make_word_r_generator():
    r = make_word(6, [1, 2, 3, 4, 5] * 2 + [-1] * 10)
    assert r == concat(alpha_power(6, 2), power(w(6, -1), 10))
    assert exponent_sum(r) == 0


def test_free_reduce():
    assert len(free_reduce(w(3, 1, -1))) == 0
    assert free_reduce(w(4, 1, -2, 2, 3)) == w(4, 1, 3)
    assert free_reduce(w(4, 1, 2, -2, -1, 3)) == w(4, 3)


def test_invert_and_conjugate():
    assert invert(w(4, 1, -3)) == w(4, 3, -1)
    x = w(5, 2, 2, -2, 4)
    assert conjugate(BraidWord(5), x) == free_reduce(x)
    r = make_word(6, [1, 2, 3, 4, 5] * 2 + [-1] * 10)
    assert equal(conjugate(r, w(6, 1, -3)), w(6, 3, -5))


def test_mismatched_strands():
    with pytest.raises(StrandCountMismatch):
        concat(w(3, 1), w(4, 1))


def test_exponent_sum():
    assert exponent_sum(w(4, 1, -3)) == 0
    assert exponent_sum(w(3, 1, 2)) == 2
    for n in range(3, 9):
        for k in range(0, n):
            word = concat(alpha_power(n, k), power(w(n, -1), k * (n - 1)))
            assert exponent_sum(word) == 0


def test_permutation_image():
    assert permutation_image(w(3, 1)) == Permutation.transposition(3, 1, 2)
    p = permutation_image(w(4, 1, -3))
    assert p == Permutation((2, 1, 4, 3)) and p.sign() == 1
    alpha = permutation_image(alpha_power(5, 1))
    # product of transpositions (1 2)(2 3)(3 4)(4 5) built independently
    expect = Permutation.identity(5)
    for i in range(1, 5):
        expect = expect.compose(Permutation.transposition(5, i, i + 1))
    assert alpha == expect
    assert len(alpha.cycles()) == 1 and len(alpha.cycles()[0]) == 5


def test_alpha_power():
    assert alpha_power(5, 1) == w(5, 1, 2, 3, 4)
    assert len(alpha_power(5, 0)) == 0
    assert alpha_power(6, 2) == w(6, 1, 2, 3, 4, 5, 1, 2, 3, 4, 5)


def test_sigma_residues():
    assert sigma(5, 3) == w(5, 3)
    assert sigma(5, 0) == w(5, 1, 2, 3, 4, -3, -2, -1)
    assert sigma(7, 9, -1) == w(7, -2)
    assert equal(sigma(5, 0, -1), invert(sigma(5, 0)))


def test_shift_conjugate():
    assert shift_conjugate(w(6, 1, -2), 2) == w(6, 3, -4)
    x = w(6, 2, -5, 1)
    assert shift_conjugate(x, 0) == x
    s0 = shift_conjugate(w(5, 4), 1)
    assert equal(s0, conjugate(alpha_power(5, 1), w(5, 4)))
    assert equal(s0, sigma(5, 0))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_alpha_shift_relation(n):
    # alpha^m sigma_i alpha^-m = sigma_{i+m} whenever i + m < n
    for m in range(1, n - 1):
        for i in range(1, n - m):
            assert equal(conjugate(alpha_power(n, m), w(n, i)), w(n, i + m))


def test_parse_and_format():
    assert parse_word(4, "1 -3") == w(4, 1, -3)
    assert parse_word(4, "1^3 2^-2") == w(4, 1, 1, 1, -2, -2)
    assert parse_word(4, "") == BraidWord(4)
    assert parse_word(5, "0") == sigma(5, 0)
    assert format_word(w(4, 1, 1, -2, 3)) == "1^2 -2 3"
    with pytest.raises(ParseError):
        parse_word(4, "1 x")
    with pytest.raises(IndexOutOfRange):
        parse_word(4, "4")


@given(st.lists(st.integers(1, 5).flatmap(lambda i: st.sampled_from((i, -i))), max_size=30))
def test_format_parse_roundtrip(tokens):
    x = make_word(6, tokens)
    assert parse_word(6, format_word(x)) == x


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=30))
def test_inverse_is_group_inverse(tokens):
    x = make_word(4, tokens)
    assert len(concat(x, invert(x))) == 0
    assert exponent_sum(invert(x)) == -exponent_sum(x)
    assert permutation_image(invert(x)) == permutation_image(x).inverse()
