import math
from fractions import Fraction as F
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degharm.exact import LAMBDA as L, ONE, ZERO, PolyLambda, binom_poly, deg_falling
from degharm.sequences import (
    H_binom,
    H_def,
    H_derangement,
    H_order,
    H_stirling,
    K_binom,
    K_lah,
    K_nested,
    K_single_sum,
    SEQUENCE_IDS,
    binomial_inversion,
    build_table,
    chain_sum_enumerate,
    chain_sums,
    corollary22_sides,
    deg_derangement,
    deg_stirling1,
    deg_stirling1_unsigned,
    derangement,
    harmonic,
    harmonic_order,
    iterated_weighted_transform,
    lah,
    stirling1_unsigned,
    thm26_sides,
    weighted_inversion,
)
from degharm.series import (
    gf_deg_derangement,
    gf_H,
    gf_H_order,
    gf_K,
    gf_lah,
    gf_stirling_unsigned,
)


def P(*cs):
    return PolyLambda(cs)


H2 = P(F(3, 2), F(-1, 2))
H3 = P(F(11, 6), -1, F(1, 6))
K22 = P(F(7, 4), F(-1, 4))

# -- classical ---------------------------------------------------------------


def test_harmonic_examples():
    assert harmonic(3) == F(11, 6)
    assert harmonic(0) == 0
    assert harmonic_order(2, 2) == F(5, 4)


def test_lah_examples_and_egf():
    assert lah(1, 1) == 1
    assert lah(3, 2) == 6
    assert lah(2, 1) == 2
    assert lah(0, 0) == 1
    assert lah(3, 0) == 0
    assert lah(2, 3) == 0
    for k in range(6):
        egf = gf_lah(k, 10).egf_values()
        for n in range(11):
            assert egf[n] == lah(n, k)


def _count_derangements(n):
    from itertools import permutations

    return sum(all(p[i] != i for i in range(n)) for p in permutations(range(n)))


@pytest.mark.parametrize("n", range(8))
def test_derangement_brute_force(n):
    assert derangement(n) == _count_derangements(n)


def test_derangement_example():
    assert derangement(3) == 2


@pytest.mark.parametrize("n", range(7))
def test_classical_stirling_counts_cycles(n):
    from itertools import permutations

    def cycles(p):
        seen, c = set(), 0
        for i in range(len(p)):
            if i not in seen:
                c += 1
                while i not in seen:
                    seen.add(i)
                    i = p[i]
        return c

    counts = [0] * (n + 1)
    for p in permutations(range(n)):
        counts[cycles(p)] += 1
    assert counts == [stirling1_unsigned(n, k) for k in range(n + 1)]


# -- degenerate derangement and Stirling -------------------------------------


def test_deg_derangement_examples():
    assert deg_derangement(0) == ONE
    assert deg_derangement(2) == P(1, 1)


def test_deg_derangement_matches_egf():
    egf = gf_deg_derangement(20).egf_values()
    for n in range(21):
        assert deg_derangement(n) == egf[n]


def test_deg_stirling_examples():
    assert deg_stirling1(1, 1) == ONE
    assert deg_stirling1(2, 1) == L - 1
    assert deg_stirling1_unsigned(2, 1) == 1 - L
    assert deg_stirling1_unsigned(2, 1)(0) == 1
    assert deg_stirling1(0, 0) == ONE
    assert deg_stirling1(3, 5) == ZERO


@pytest.mark.parametrize("n", range(9))
def test_deg_stirling_defining_expansion(n):
    # (x)_n = sum_k S_{1,λ}(n,k) (x)_{k,λ}, checked at numeric x and λ
    for x in (F(5, 2), F(-3), F(7)):
        falling = math.prod((x - i for i in range(n)), start=F(1))
        for lam in (F(1, 3), F(-2), F(5)):
            total = sum(deg_stirling1(n, k)(lam) * deg_falling(x, k)(lam) for k in range(n + 1))
            assert total == falling


def test_deg_stirling_unsigned_matches_egf():
    N = 14
    for k in range(N + 1):
        egf = gf_stirling_unsigned(k, N).egf_values()
        for n in range(N + 1):
            assert deg_stirling1_unsigned(n, k) == egf[n]


# -- harmonic family -----------------------------------------------------------


def test_H_def_examples():
    assert H_def(0) == ZERO
    assert H_def(1) == ONE
    assert H_def(2) == H2
    assert H_def(3) == H3
    assert H_def(3)(0) == harmonic(3)


def test_H_def_literal_sum_via_lambda_form():
    # (1/λ) sum_k binom(λ,k)(-1)^(k-1), evaluated at λ where that form is defined
    for n in range(1, 12):
        for lam in (F(1, 2), F(-3), F(7, 5)):
            binom = lambda k: math.prod((lam - i for i in range(k)), start=F(1)) / math.factorial(k)
            literal = sum(binom(k) * (-1) ** (k - 1) for k in range(1, n + 1)) / lam
            assert H_def(n)(lam) == literal


def test_H_binom_examples():
    assert H_binom(1) == ONE
    assert H_binom(2) == H2


@pytest.mark.parametrize("n", range(26))
def test_H_binom_equals_H_def(n):
    assert H_binom(n) == H_def(n)


@pytest.mark.parametrize("n", range(1, 26))
def test_H_def_recurrence(n):
    assert H_def(n) - H_def(n - 1) == binom_poly(L - 1, n - 1) * F((-1) ** (n - 1), n)


def test_H_def_matches_gf():
    g = gf_H(25)
    for n in range(26):
        assert H_def(n) == g[n]


def test_H_order_examples():
    for n in range(26):
        assert H_order(n, 1) == H_def(n)
    assert H_order(2, 2) == P(F(5, 4), F(-1, 4))
    assert H_order(2, 2)(0) == harmonic_order(2, 2)
    assert H_order(0, 3) == ZERO


@pytest.mark.parametrize("m", range(1, 5))
def test_H_order_matches_gf_and_limit(m):
    g = gf_H_order(m, 20)
    for n in range(21):
        assert H_order(n, m) == g[n]
        assert H_order(n, m)(0) == harmonic_order(n, m)


# -- K -----------------------------------------------------------------------


def test_K_examples():
    assert K_binom(2, 2) == K22
    assert K_binom(2, 2)(0) == F(7, 4)
    assert K_nested(2, 2) == K22
    assert K_lah(2, 2) == K22
    for m in range(1, 5):
        assert K_lah(1, m) == ONE


def test_K_nested_brute_force_at_zero():
    # sum over (1,1), (1,2), (2,2) of 1/(k1 k2)
    assert K_nested(2, 2)(0) == 1 + F(1, 2) + F(1, 4)


@pytest.mark.parametrize("n", range(1, 26))
def test_K_m1_is_H(n):
    assert K_binom(n, 1) == K_nested(n, 1) == K_lah(n, 1) == H_def(n)


@pytest.mark.parametrize("m", range(1, 5))
def test_K_triple_agreement_and_gf(m):
    g = gf_K(m, 20)
    for n in range(1, 21):
        k = K_nested(n, m)
        assert K_binom(n, m) == k
        assert K_lah(n, m) == k
        assert K_single_sum(n, m) == k
        assert g[n] == k


@pytest.mark.parametrize("m", range(1, 5))
def test_K_nested_dp_vs_enumeration(m):
    for n in range(1, 9):
        assert K_nested(n, m, "dp") == K_nested(n, m, "enumerate")


def test_K_nested_rejects_unknown_method():
    with pytest.raises(ValueError):
        K_nested(3, 2, "magic")


# -- Stirling and derangement expressions for H -----------------------------


def test_H_stirling_examples():
    assert H_stirling(1, "as_printed") == ONE
    assert H_stirling(1, "as_derived") == ONE
    assert H_stirling(2, "as_derived") == H2
    # 1·1·(1−λ) + 2·(1+λ)·1
    assert H_stirling(2, "as_printed") == P(3, 1)
    assert H_stirling(2, "as_printed") != H_def(2)


def test_H_stirling_rejects_unknown_variant():
    with pytest.raises(ValueError):
        H_stirling(3, "guess")


@pytest.mark.parametrize("n", range(1, 26))
def test_H_stirling_as_derived(n):
    assert H_stirling(n, "as_derived") == H_def(n)


@pytest.mark.parametrize("n", range(2, 26))
def test_H_stirling_as_printed_fails(n):
    assert H_stirling(n, "as_printed") != H_def(n)


def test_H_derangement_examples():
    assert H_derangement(1) == ONE
    assert H_derangement(2) == H2


@pytest.mark.parametrize("n", range(1, 21))
def test_H_derangement(n):
    assert H_derangement(n) == H_def(n)


# -- sides -------------------------------------------------------------------


def test_factorial_difference_examples():
    assert corollary22_sides(1) == (ZERO, ZERO)
    assert corollary22_sides(2) == (ONE, ONE)
    assert corollary22_sides(3) == (-L, -L)


@pytest.mark.parametrize("n", range(1, 26))
def test_factorial_difference_identity(n):
    lhs, rhs = corollary22_sides(n)
    assert lhs == rhs


def test_single_sum_vs_chain_examples():
    for m in range(1, 5):
        assert thm26_sides(1, m) == (ONE, ONE)
    assert thm26_sides(2, 2) == (K22, K22)


# -- transforms ---------------------------------------------------------------

fracs = st.builds(F, st.integers(-30, 30), st.integers(1, 10))


def test_binomial_inversion_example():
    assert binomial_inversion([F(1)] + [F(0)] * 5) == [1, 2, 3, 4, 5, 6]


@given(st.lists(fracs, min_size=1, max_size=12))
def test_binomial_inversion_involution(a):
    assert binomial_inversion(binomial_inversion(a)) == a


def test_binomial_inversion_of_harmonic_weights():
    a = [binom_poly(L + (k - 1), k - 1) / k for k in range(1, 16)]
    assert binomial_inversion(a) == [H_def(n) for n in range(1, 16)]


def test_iterated_transform_example():
    a = [F(1), F(0), F(0)]
    direct, chain = iterated_weighted_transform(a, 2)
    assert direct[1] == 2
    assert chain[1] == 2


@settings(deadline=None)
@given(st.lists(fracs, min_size=1, max_size=12))
def test_weighted_inversion_m1(a):
    b = binomial_inversion(a)
    direct = weighted_inversion(a, 1)
    for n in range(1, len(a) + 1):
        assert direct[n - 1] == sum((b[k - 1] / k for k in range(1, n + 1)), F(0))


@settings(deadline=None, max_examples=50)
@given(st.lists(fracs, min_size=1, max_size=10), st.integers(1, 3))
def test_iterated_transform_vs_enumeration(a, m):
    direct, chain = iterated_weighted_transform(a, m)
    b = binomial_inversion(a)
    for n in range(1, len(a) + 1):
        brute = chain_sum_enumerate(b, m, n)
        assert direct[n - 1] == brute
        assert chain[n - 1] == brute


def test_chain_enumeration_literal():
    b = [F(2), F(-1), F(5)]
    m, n = 2, 3
    expected = sum(
        b[c[0] - 1] / (c[0] * c[1]) for c in combinations_with_replacement(range(1, n + 1), m)
    )
    assert chain_sum_enumerate(b, m, n) == expected
    assert chain_sums(b, m)[-1] == expected


def test_chain_sums_reject_zero_m():
    with pytest.raises(ValueError):
        chain_sums([F(1)], 0)


# -- tables ------------------------------------------------------------------


def test_build_table_H():
    t = build_table("H", 3)
    assert list(t.rows) == [(0,), (1,), (2,), (3,)]
    assert t.rows[(3,)] == H3
    assert t.evaluate(F(0)).rows[(3,)] == F(11, 6)


def test_build_table_K_starts_at_one():
    t = build_table("K", 2, m=2)
    assert list(t.rows) == [(1,), (2,)]
    assert t.rows[(2,)] == K22


def test_build_table_triangle():
    t = build_table("lah", 3)
    assert t.rows[(3, 2)] == 6
    assert len(t.rows) == 10
    assert list(build_table("stirling1_signed", 3, k=1).rows) == [(0, 1), (1, 1), (2, 1), (3, 1)]


@pytest.mark.parametrize("seq", SEQUENCE_IDS)
def test_build_table_every_sequence(seq):
    t = build_table(seq, 4, m=2)
    assert t.rows
    assert all(isinstance(v, PolyLambda) for v in t.rows.values())


def test_build_table_errors():
    with pytest.raises(ValueError):
        build_table("nope", 3)
    with pytest.raises(ValueError):
        build_table("K", 3)


def test_index_zero_conventions():
    assert H_def(0) == ZERO
    assert H_order(0, 2) == ZERO
    assert deg_derangement(0) == ONE
    assert K_nested(0, 2) == ZERO
    assert lah(-1, 1) == 0
