import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from braidgen.braid_core import (
    BraidWord,
    alpha_power,
    concat,
    conjugate,
    exponent_sum,
    free_reduce,
    invert,
    make_word,
    power,
    sigma,
)
from braidgen.errors import BadIndices, BadParams, BadTarget, NonZeroExponentSum, ParseError, TooLong
from braidgen.garside_nf import equal, is_identity
from braidgen.genset_rewriter import (
    SIGMA1_SIGMA0_INV,
    ConjugateFactor,
    RewriteParams,
    TwoGenSLP,
    appendix_conjugate_expand,
    b6_generators,
    choose_commuting_index,
    closed_form_root,
    commutes,
    eliminate_sigma0,
    expand_slp,
    flatten,
    pair_word,
    pairs_to_sigma1_alphabet,
    parse_slp,
    psi_b4_to_b3,
    r_word,
    recurrence_rules,
    rewrite_full,
    rewrite_pipeline,
    s_word,
    sigma1_letters_word,
    substitute_b6,
    telescope_decompose,
    telescope_length,
    theorem1_factor,
    theorem2_b4_generators,
    theorem2_b6_factor,
    valid_steps,
)

from conftest import random_word


def w(n, *t):
    return make_word(n, list(t))


def pairs_product(n, pairs):
    return concat(BraidWord(n), *(pair_word(n, p) for p in pairs))


# -- parameters


@pytest.mark.parametrize("n,k", [(6, 5), (4, 3), (3, 2), (6, 1), (5, 1), (5, 4), (8, 2), (9, 3), (7, 7)])
def test_rejected_params(n, k):
    with pytest.raises(BadParams):
        RewriteParams(n, k)


def test_exclusion_message_names_small_cases():
    for n, k in [(6, 5), (4, 3), (3, 2)]:
        with pytest.raises(BadParams, match=r"\{3, 4, 6\}"):
            RewriteParams(n, k)


def test_valid_steps():
    for n in range(3, 14):
        expect = [k for k in range(2, n - 1) if gcd(k, n) == 1]
        assert valid_steps(n) == expect
    assert valid_steps(6) == [] and valid_steps(4) == []
    assert RewriteParams(5, 2).N == 8


# -- closed forms


def test_closed_forms_small():
    p = RewriteParams(5, 2)
    assert r_word(p, 0) == concat(alpha_power(5, 2), power(w(5, -1), 8))
    assert s_word(p, 0) == w(5, 1, -3)
    # 1 + 2k = 5 = 0 mod 5
    assert equal(s_word(p, 1), concat(w(5, 3), sigma(5, 0, -1)))


@pytest.mark.parametrize("n", [5, 7, 8, 9])
def test_recurrences_hold(n):
    for k in valid_steps(n):
        p = RewriteParams(n, k)
        for m in range(3):
            r, s = r_word(p, m), s_word(p, m)
            assert exponent_sum(r) == 0 and exponent_sum(s) == 0
            assert equal(s_word(p, m + 1), conjugate(r, s))
            assert equal(r_word(p, m + 1), concat(r, power(s, p.N)))


@pytest.mark.parametrize("n", [5, 7, 8])
def test_telescoping_identity(n):
    for k in valid_steps(n):
        p = RewriteParams(n, k)
        for i in range(2, n):
            ell = telescope_length(p, i)
            assert (1 + ell * k - i) % n == 0 and 1 <= ell <= n - 1
            prod = concat(BraidWord(n), *(s_word(p, m) for m in range(ell)))
            assert equal(prod, w(n, 1, -i))


def test_telescope_length_examples():
    assert telescope_length(RewriteParams(5, 2), 3) == 1
    assert telescope_length(RewriteParams(5, 2), 2) == 3
    assert telescope_length(RewriteParams(7, 3), 2) == 5
    assert telescope_length(RewriteParams(7, 2), 6) == 6
    with pytest.raises(BadTarget):
        telescope_length(RewriteParams(5, 2), 1)


# -- SLPs


def test_theorem1_factor_roots():
    assert theorem1_factor(RewriteParams(5, 2), 3).to_lines() == ["ROOT = S0"]
    slp = theorem1_factor(RewriteParams(5, 2), 2)
    assert slp.root == (("S0", 1), ("S1", 1), ("S2", 1))
    assert [s for s, _ in theorem1_factor(RewriteParams(7, 3), 2).root] == ["S0", "S1", "S2", "S3", "S4"]


def test_flatten_small():
    p = RewriteParams(5, 2)
    assert flatten(theorem1_factor(p, 3)) == (("S", 1),)
    r1 = TwoGenSLP(p, recurrence_rules(p, 1), (("R1", 1),))
    assert flatten(r1) == (("R", 1),) + (("S", 1),) * 8
    assert r1.flat_length() == 9


def test_flatten_too_long():
    p = RewriteParams(10, 3)
    slp = TwoGenSLP(p, recurrence_rules(p, 8), (("S8", 1),))
    with pytest.raises(TooLong):
        flatten(slp)
    assert slp.flat_length() > 10**6


def test_symbol_lengths_follow_recurrence():
    p = RewriteParams(7, 2)
    slp = TwoGenSLP(p, recurrence_rules(p, 6), ())
    for m in range(6):
        r, s = slp.symbol_length(f"R{m}"), slp.symbol_length(f"S{m}")
        assert slp.symbol_length(f"S{m + 1}") == 2 * r + s
        assert slp.symbol_length(f"R{m + 1}") == r + p.N * s


@pytest.mark.parametrize("n,k", [(5, 2), (5, 3), (7, 2), (7, 3)])
def test_expand_matches_target(n, k):
    p = RewriteParams(n, k)
    for i in range(2, n):
        slp = theorem1_factor(p, i)
        assert equal(expand_slp(slp), w(n, 1, -i))
        assert equal(closed_form_root(slp), w(n, 1, -i))


def test_slp_text_roundtrip():
    p = RewriteParams(7, 3)
    slp = theorem1_factor(p, 5)
    again = parse_slp(p, slp.to_text())
    assert again.rules == slp.rules and again.root == slp.root
    with pytest.raises(ParseError, match="slp line 1"):
        parse_slp(p, "S1 = R0 X9")
    with pytest.raises((ParseError, BadParams)):
        parse_slp(p, "ROOT = S3")


# -- Theorem 2


def test_b4_generators():
    g = theorem2_b4_generators()
    assert g.relation_holds
    assert g.u_inv == w(4, 1, -2)
    assert g.v_inv == w(4, 1, 1, -2, -1)
    assert g.c_inv == w(4, 1, -3)
    assert equal(g.w, concat(g.u, g.c, invert(g.u)))
    for x in (g.u_inv, g.v_inv, g.c_inv):
        assert exponent_sum(x) == 0


def test_psi():
    img = psi_b4_to_b3(w(4, 1, -3))
    assert img.n == 3 and is_identity(img)
    assert psi_b4_to_b3(w(4, 2)) == w(3, 2)
    # psi is a homomorphism: it respects the B_4 relations
    assert equal(psi_b4_to_b3(w(4, 2, 3, 2)), psi_b4_to_b3(w(4, 3, 2, 3)))
    assert equal(psi_b4_to_b3(w(4, 1, 3)), psi_b4_to_b3(w(4, 3, 1)))


def test_b6_identities():
    g = b6_generators()
    a, b, r = g["a"], g["b"], g["r"]
    assert equal(conjugate(r, b), w(6, 3, -5))
    assert equal(concat(b, conjugate(r, b)), w(6, 1, -5))
    assert equal(conjugate(r, a), concat(power(w(6, 3), -9), w(6, -4), power(w(6, 3), 10)))
    for i in range(2, 6):
        assert equal(substitute_b6(theorem2_b6_factor(i)), w(6, 1, -i))
    assert theorem2_b6_factor(2) == (("a", 1),)
    assert theorem2_b6_factor(3) == (("b", 1),)
    assert theorem2_b6_factor(5) == (("b", 1), ("r", 1), ("b", 1), ("r", -1))
    assert theorem2_b6_factor(4) == (("b", -9), ("r", 1), ("a", 1), ("r", -1), ("b", 10))


# -- conjugate expansion


def test_commuting_index():
    assert choose_commuting_index(6, 1, 3) == 1
    assert choose_commuting_index(6, 1, 2) == 4
    assert choose_commuting_index(5, 2, 3, ring=True) == 0
    assert commutes(5, 1, 4) is True
    assert commutes(5, 0, 1) is False and commutes(5, 0, 4) is False  # adjacent mod 5
    assert commutes(6, 1, 5) is True


def test_conjugate_expand_examples():
    assert appendix_conjugate_expand(6, ConjugateFactor(BraidWord(6), (1, 3))) == [(1, 3)]
    assert appendix_conjugate_expand(6, ConjugateFactor(w(6, 2), (1, 2))) == [(2, 4), (1, 2), (4, 2)]
    four = appendix_conjugate_expand(6, ConjugateFactor(w(6, -2), (1, 3)))
    assert len(four) == 4 and four[0][1] == 2 and four[-1][0] == 2
    with pytest.raises(BadIndices):
        ConjugateFactor(BraidWord(6), (2, 2))


@pytest.mark.parametrize("n", [5, 6, 7])
@pytest.mark.parametrize("skip", [False, True])
def test_conjugate_expand_random(n, skip):
    rng = random.Random(n * 10 + skip)
    for _ in range(40):
        g = random_word(rng, n, rng.randint(0, 6))
        a, b = rng.sample(range(1, n), 2)
        f = ConjugateFactor(g, (a, b), rng.choice((1, -1)))
        pairs = appendix_conjugate_expand(n, f, skip_commuting=skip)
        if n == 5:
            pairs = eliminate_sigma0(pairs)
        assert all(1 <= x <= n - 1 for p in pairs for x in p)
        assert equal(pairs_product(n, pairs), f.to_word())


def test_sigma0_factorizations():
    s0 = sigma(5, 0)
    master = concat(w(5, 1), invert(s0))
    assert len(SIGMA1_SIGMA0_INV) == 12
    assert equal(pairs_product(5, SIGMA1_SIGMA0_INV), master)
    # the three displayed pieces
    assert equal(pairs_product(5, SIGMA1_SIGMA0_INV[:6]), w(5, 1, 1, 2, -1, -1, -1))
    assert equal(pairs_product(5, SIGMA1_SIGMA0_INV[6:7]), w(5, 3, -4))
    assert equal(pairs_product(5, SIGMA1_SIGMA0_INV[7:]), w(5, 1, 1, 1, -3, -2, -1))
    assert equal(w(5, 1, 1, 2, -1, -1, -1, 3, -4, 1, 1, 1, -3, -2, -1), master)


def test_eliminate_sigma0():
    assert eliminate_sigma0([(1, 3)]) == [(1, 3)]
    assert eliminate_sigma0([(1, 0)]) == list(SIGMA1_SIGMA0_INV)
    assert eliminate_sigma0([(3, 0)]) == [(3, 1)] + list(SIGMA1_SIGMA0_INV)
    for i in range(1, 5):
        out = eliminate_sigma0([(0, i)])
        assert all(0 not in p for p in out)
        assert equal(pairs_product(5, out), concat(sigma(5, 0), w(5, -i)))


def test_pairs_to_sigma1_alphabet():
    assert pairs_to_sigma1_alphabet([(1, 3)]) == [(3, 1)]
    assert pairs_to_sigma1_alphabet([(2, 4)]) == [(2, -1), (4, 1)]
    assert pairs_to_sigma1_alphabet([(3, 1)]) == [(3, -1)]
    rng = random.Random(3)
    for _ in range(30):
        pairs = [tuple(rng.sample(range(1, 7), 2)) for _ in range(5)]
        assert equal(sigma1_letters_word(7, pairs_to_sigma1_alphabet(pairs)), pairs_product(7, pairs))


def test_telescope_decompose():
    assert telescope_decompose(BraidWord(5)) == []
    factors = telescope_decompose(w(4, 1, -3))
    assert len(factors) == 1
    assert free_reduce(factors[0].to_word()) == w(4, 1, -3)
    x = w(5, 2, 1, -2, -1)
    factors = telescope_decompose(x)
    assert len(factors) <= 4
    assert equal(concat(BraidWord(5), *(f.to_word() for f in factors)), x)
    with pytest.raises(NonZeroExponentSum):
        telescope_decompose(w(5, 1, 2))


def zero_sum_words(n, half):
    pos = st.lists(st.integers(1, n - 1), max_size=half)
    return pos.flatmap(
        lambda p: st.lists(st.integers(1, n - 1), min_size=len(p), max_size=len(p)).flatmap(
            lambda q: st.permutations(p + [-x for x in q])
        )
    ).map(lambda t: make_word(n, t))


@settings(max_examples=60, deadline=None)
@given(zero_sum_words(6, 5))
def test_telescope_product_is_free_equal(x):
    factors = telescope_decompose(x)
    assert free_reduce(concat(BraidWord(6), *(f.to_word() for f in factors))) == free_reduce(x)


# -- full pipeline


def test_rewrite_full_generators():
    p = RewriteParams(5, 2)
    assert rewrite_full(p, s_word(p, 0)).root == (("S0", 1),)
    assert rewrite_full(p, r_word(p, 0)).root == (("R0", 1),)
    assert rewrite_full(p, BraidWord(5)).root == ()


@pytest.mark.parametrize("n,k", [(5, 2), (7, 3)])
def test_rewrite_full_random(n, k):
    p = RewriteParams(n, k)
    rng = random.Random(n + k)
    cases = [w(n, 2, 1, -2, -1)] if n == 5 else []
    for _ in range(15):
        half = rng.randint(1, 4)
        toks = [rng.randint(1, n - 1) for _ in range(half)] + [-rng.randint(1, n - 1) for _ in range(half)]
        rng.shuffle(toks)
        cases.append(make_word(n, toks))
    for x in cases:
        slp = rewrite_full(p, x)
        assert equal(closed_form_root(slp), x)
        assert equal(sigma1_letters_word(n, rewrite_pipeline(p, x)), x)
        if slp.flat_length() <= 10**5:
            assert equal(expand_slp(slp), x)
