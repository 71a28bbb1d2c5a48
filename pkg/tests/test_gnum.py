from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from betanum.beta import PeriodicWord, is_admissible
from betanum.gnum import (
    Counterexample,
    GSequence,
    HypBBounds,
    NoneFoundWithinBounds,
    carry_pattern,
    digit_frequency,
    g_evaluate,
    g_values,
    greedy_g_digits,
    hyp_b_falsify,
    hyp_b_falsify_bruteforce,
    odometer_successor,
    satisfies_greedy_condition,
)

WORDS = ["10^w", "10000^w", "2(1)^w", "1100^w", "2200^w", "2101^w", "2^w"]
FIB = GSequence(PeriodicWord.parse("10^w"))
PLASTIC = GSequence(PeriodicWord.parse("10000^w"))
THREE = GSequence(PeriodicWord.parse("2^w"))


def test_g_values_examples():
    assert g_values(PeriodicWord.parse("10^w"), 5) == [1, 2, 3, 5, 8, 13]
    assert g_values(PeriodicWord.parse("10000^w"), 10) == [1, 2, 3, 4, 5, 6, 8, 11, 15, 20, 26]
    assert g_values(PeriodicWord.parse("2^w"), 3) == [1, 3, 9, 27]
    with pytest.raises(ValueError):
        g_values(PeriodicWord.parse("2^w"), -1)


@pytest.mark.parametrize("w", ["10^w", "10000^w", "1100^w", "2200^w", "2101^w", "2^w"])
def test_purely_periodic_recurrence(w):
    a = PeriodicWord.parse(w)
    d = len(a.period)
    G = GSequence(a)
    for k in range(d, 150):
        assert G[k] == sum(a[j] * G[k - j] for j in range(1, d + 1)) + G[k - d]


def representations(n, G):
    """All digit vectors satisfying the greedy condition with value n (exhaustive oracle)."""
    top = G.top_index(n) if n else -1
    ranges = [range(-(-G[k + 1] // G[k])) for k in range(top + 1)]
    return [list(d) for d in product(*ranges) if g_evaluate(d, G) == n and satisfies_greedy_condition(d, G)]


@pytest.mark.parametrize("w", ["10^w", "2(1)^w", "1100^w", "2^w"])
def test_greedy_is_the_unique_admissible_representation(w):
    G = GSequence(PeriodicWord.parse(w))
    for n in range(1, 40):
        reps = representations(n, G)
        assert len(reps) == 1
        d = greedy_g_digits(n, G)
        assert reps[0] == d


def test_greedy_examples():
    assert greedy_g_digits(0, FIB) == []
    assert greedy_g_digits(4, FIB) == [1, 0, 1]
    assert greedy_g_digits(7, PLASTIC) == [1, 0, 0, 0, 0, 1]
    assert g_evaluate([], FIB) == 0
    assert g_evaluate([1, 0, 1], FIB) == 4
    assert g_evaluate([2, 2], THREE) == 8
    with pytest.raises(ValueError):
        greedy_g_digits(-1, FIB)


def test_odometer_examples():
    assert odometer_successor([], FIB) == [1]
    assert odometer_successor([1, 0, 1], FIB) == [0, 0, 0, 1]
    assert odometer_successor([2, 2], THREE) == [0, 0, 1]


@pytest.mark.parametrize("w", WORDS)
def test_odometer_agrees_with_reexpansion(w):
    G = GSequence(PeriodicWord.parse(w))
    d = []
    for n in range(3000):
        assert d == greedy_g_digits(n, G)
        d = odometer_successor(d, G)


@pytest.mark.parametrize("w", ["10^w", "10000^w", "1100^w", "2101^w"])
def test_greedy_digits_are_parry_admissible(w):
    a = PeriodicWord.parse(w)
    G = GSequence(a)
    for n in range(1, 2000):
        assert is_admissible(greedy_g_digits(n, G)[::-1], a)


SMALL = HypBBounds(k_max=4, window=3, m_extra=5, n_max=400)


@pytest.mark.parametrize("w", WORDS)
@pytest.mark.parametrize("b", [0, 1, 2, 3])
def test_fast_search_matches_bruteforce(w, b):
    G = GSequence(PeriodicWord.parse(w))
    fast = hyp_b_falsify(G, b, SMALL)
    slow = hyp_b_falsify_bruteforce(G, b, SMALL)
    assert type(fast) is type(slow)
    if isinstance(fast, Counterexample):
        assert (fast.k, fast.N, fast.m) == (slow.k, slow.N, slow.m)
        assert fast.replay(G)


def test_plastic_counterexample_in_stated_box():
    r = hyp_b_falsify(PLASTIC, 3, HypBBounds(k_max=10, m_max=20))
    assert isinstance(r, Counterexample) and r.replay(PLASTIC)


def test_integer_base_has_no_counterexample():
    assert isinstance(hyp_b_falsify(THREE, 1, HypBBounds(k_max=10, m_max=20)), NoneFoundWithinBounds)


def test_fibonacci_gap_two_is_not_enough():
    # 6 = G_3 + G_0 has a zero gap at positions 1, 2; adding G_3 = 5 gives 11 = G_4 + G_2
    r = hyp_b_falsify(FIB, 2, HypBBounds(k_max=10, m_max=20))
    assert isinstance(r, Counterexample)
    assert (r.k, r.N, r.m) == (1, 6, 3)
    assert r.before == (1, 0, 0, 1) and r.after == (0, 0, 1, 0, 1)
    assert isinstance(hyp_b_falsify(FIB, 3), NoneFoundWithinBounds)


@given(st.integers(0, 4), st.integers(1, 6), st.integers(0, 6))
def test_counterexamples_survive_larger_bounds(b, k, extra):
    small = HypBBounds(k_max=k, window=3, m_extra=4, n_max=2000)
    big = HypBBounds(k_max=k + 1, window=3 + extra, m_extra=4 + extra, n_max=4000)
    for G in (FIB, PLASTIC):
        if isinstance(hyp_b_falsify(G, b, small), Counterexample):
            assert isinstance(hyp_b_falsify(G, b, big), Counterexample)


def test_bounds_parse():
    assert HypBBounds.parse("10,6,20,1000") == HypBBounds(10, 6, 0, 1000, 20)
    assert HypBBounds.parse("10,6,+12,1000") == HypBBounds(10, 6, 12, 1000, None)
    with pytest.raises(ValueError):
        HypBBounds.parse("1,2,3")
    with pytest.raises(ValueError):
        hyp_b_falsify(FIB, -1)


def test_plastic_carry_pattern():
    cp = carry_pattern(PLASTIC, 3, [(1, 1), (0, 1)], 200)
    assert cp.value_set == [-1, 0, 1]
    assert cp.period == 6
    assert all((v == 0) == (k % 3 == 1) for k, v in enumerate(cp.values))
    # computed signs: +1 on k = 0, 5 and -1 on k = 2, 3 (mod 6)
    assert cp.classes == {0: 1, 1: 0, 2: -1, 3: -1, 4: 0, 5: 1}
    published = {(6, 5): -1, (6, 0): -1, (3, 1): 0, (6, 2): 1, (6, 3): 1}
    cp = carry_pattern(PLASTIC, 3, [(1, 1), (0, 1)], 200, published)
    assert sorted(cp.mismatches) == [(6, 0), (6, 2), (6, 3), (6, 5)]


def test_exact_recurrences_have_zero_carries():
    assert carry_pattern(FIB, 2, [(1, 1), (0, 1)], 100).value_set == [0]
    assert carry_pattern(THREE, 1, [(0, 3)], 100).value_set == [0]


def test_digit_frequency():
    f = digit_frequency(THREE, 27, [0])
    assert f[0] == {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(1, 3)}
    N = FIB[10]
    f = digit_frequency(FIB, N, [0, 1, 2])
    ones = sum(1 for n in range(N) if greedy_g_digits(n, FIB)[:1] == [1])
    assert f[0][1] == Fraction(ones, N)
    for p in (0, 1, 2):
        assert sum(f[p].values()) == 1
    with pytest.raises(ValueError):
        digit_frequency(FIB, 0, [0])
