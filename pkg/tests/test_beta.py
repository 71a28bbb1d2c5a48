from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from betanum.beta import (
    Finite,
    NoneFound,
    NotParryWithinBound,
    Periodic,
    PeriodicWord,
    Unknown,
    WordError,
    classify,
    compare_sequences,
    fin_membership,
    find_non_finite,
    is_admissible,
    pf_check,
    quasi_greedy_expansion,
    weak_finiteness_witness,
    word_value,
    Witness,
)
from betanum.field import NumberField

EXPECTED_WORDS = {
    "golden": ("10^w", 2),
    "plastic": ("10000^w", 5),
    "quad-preperiodic": ("2(1)^w", 2),
    "cubic-t2": ("1100^w", 4),
    "cubic-t3": ("2200^w", 4),
    "simple-odd-a": ("2101^w", 4),
    "simple-odd-b": ("2200^w", 4),
    "int3": ("2^w", 1),
}


def mp_greedy_digits(x_val, beta, n):
    """Float oracle for the beta-transformation, at 80 digits."""
    out = []
    for _ in range(n):
        y = beta * x_val
        d = int(mpmath.floor(y))
        out.append(d)
        x_val = y - d
    return out


@pytest.mark.parametrize("name", sorted(EXPECTED_WORDS))
def test_quasi_greedy_words(name, expansions, fields):
    word, V = expansions[name]
    text, size = EXPECTED_WORDS[name]
    assert str(word) == text
    assert len(V) == size
    assert word_value(fields[name], word) == fields[name].one
    assert V.elements[0] == fields[name].one
    assert all(fields[name].zero < v <= fields[name].one for v in V)


def test_quasi_greedy_matches_float_oracle(fields):
    # T~ orbit of 1 for the cubic x^3-2x^2+x-1, compared digit by digit
    f = fields["cubic-t2"]
    with mpmath.workdps(80):
        beta = mpmath.findroot(lambda t: t**3 - 2 * t**2 + t - 1, 1.75)
        x, digits = mpmath.mpf(1), []
        for _ in range(12):
            y = beta * x
            a = int(mpmath.ceil(y)) - 1
            digits.append(a)
            x = y - a
    word, _ = quasi_greedy_expansion(f)
    assert word.prefix(12) == digits


def test_non_parry_within_bound():
    # the cube root of 2 is not a Perron number, hence never a Parry number
    f = NumberField.from_text("x^3-2")
    with pytest.raises(NotParryWithinBound):
        quasi_greedy_expansion(f, max_iter=60)
    r = classify(f, max_iter=60)
    assert r.is_parry is None and not r.is_pisot


@pytest.mark.parametrize(
    "text, pre, per",
    [("1100^w", (), (1, 1, 0, 0)), ("2(1)^w", (2,), (1,)), ("1010^w", (), (1, 0)), ("11(01)^w", (1,), (1, 0))],
)
def test_periodic_word_normalizes(text, pre, per):
    w = PeriodicWord.parse(text)
    assert (w.preperiod, w.period) == (pre, per)


@pytest.mark.parametrize("bad", ["", "12", "(0)^w", "1a^w"])
def test_periodic_word_rejects(bad):
    with pytest.raises(WordError):
        PeriodicWord.parse(bad)


def test_compare_sequences():
    a = PeriodicWord.parse("10^w")
    assert compare_sequences([1, 0, 1], a) < 0
    assert compare_sequences([1, 1], a) > 0
    assert compare_sequences(a, PeriodicWord.parse("1010^w")) == 0


@pytest.mark.parametrize("name", ["golden", "plastic", "cubic-t2", "simple-odd-a", "quad-preperiodic"])
@given(w=st.lists(st.integers(0, 2), min_size=1, max_size=9))
def test_admissibility_matches_greedy_oracle(name, w, fields, expansions):
    """A finite word is admissible iff it is the greedy expansion of its own value."""
    f = fields[name]
    a, _ = expansions[name]
    x = f.from_inverse_powers([0] + w)
    greedy = None
    if x < f.one:
        st_ = fin_membership(x)
        # without (PF) the value need not have a finite expansion; then w is not greedy
        if isinstance(st_, Finite):
            greedy = list(st_.digits)
    stripped = list(w)
    while stripped and stripped[-1] == 0:
        stripped.pop()
    assert is_admissible(w, a) == (greedy == stripped)


def test_fin_membership_examples(fields):
    g = fields["golden"]
    beta = g.gen
    # 1/beta + 1/beta^3 has digits 101
    x = beta.inverse() + beta.inverse() ** 3
    s = fin_membership(x)
    assert isinstance(s, Finite) and s.digits == (1, 0, 1)
    assert isinstance(fin_membership(g.zero), Finite)
    with pytest.raises(ValueError):
        fin_membership(g.one)
    with pytest.raises(ValueError):
        fin_membership(g(-1) / 2)


def test_fin_membership_periodic_for_rational(fields):
    # 1/2 has a purely periodic-type expansion in the golden base (no finite one: 1/2 is not in Z[beta])
    s = fin_membership(fields["golden"](Fraction(1, 2)))
    assert isinstance(s, Periodic)
    with mpmath.workdps(80):
        beta = (1 + mpmath.sqrt(5)) / 2
        assert list(s.digits) == mp_greedy_digits(mpmath.mpf(1) / 2, beta, len(s.digits))


def test_fin_membership_cap(fields):
    s = fin_membership(fields["golden"](Fraction(1, 7)), cap=2)
    assert isinstance(s, Unknown) and s.cap == 2


def test_pf_by_criterion(fields):
    assert pf_check(fields["quad-preperiodic"]).verdict == "PassByCriterion"
    assert pf_check(fields["int3"]).verdict == "PassByCriterion"
    assert pf_check(fields["quad-preperiodic"]).certified


def test_pf_sampled_golden(fields):
    r = pf_check(fields["golden"])
    assert r.verdict == "PassSampled" and r.holds and not r.certified
    assert r.count > 0 and r.inconclusive == 0


def test_pf_counterexample_simple_odd_a(fields):
    f = fields["simple-odd-a"]
    r = pf_check(f)
    assert r.verdict == "Counterexample" and r.certified
    x = r.counterexample
    assert x == f.element([Fraction(-63, 8), Fraction(25, 8)])
    st_ = r.counterexample_status
    assert isinstance(st_, Periodic)
    # independent check of the orbit digits in floating point at 80 digits
    with mpmath.workdps(80):
        beta = mpmath.findroot(lambda t: t**3 - 3 * t**2 + 2 * t - 2, 2.5)
        xv = mpmath.mpf(-63) / 8 + mpmath.mpf(25) / 8 * beta
        assert list(st_.digits) == mp_greedy_digits(xv, beta, len(st_.digits))


def test_pf_samples_are_seeded(fields):
    a = pf_check(fields["cubic-t2"], samples=50, seed=3)
    b = pf_check(fields["cubic-t2"], samples=50, seed=3)
    assert (a.verdict, a.count) == (b.verdict, b.count) == ("PassSampled", 50)


def test_non_finite_element_for_quadratic(fields):
    f = fields["quad-preperiodic"]
    coeffs, x, st_ = find_non_finite(f, J=8, C=3)
    assert isinstance(st_, Periodic)
    assert f.zero <= x < f.one
    assert x == f.element([-7, 3])


def test_weak_finiteness_witness(fields):
    f = fields["quad-preperiodic"]
    x = f.element([-7, 3])
    w = weak_finiteness_witness(x)
    assert isinstance(w, Witness)
    assert isinstance(fin_membership(w.y), Finite)
    assert isinstance(fin_membership(x + w.y), Finite)


def test_witness_none_found_is_reported(fields):
    f = fields["golden"]
    r = weak_finiteness_witness(f(Fraction(1, 3)), J=1, C=1)
    assert isinstance(r, NoneFound)


def test_classify(fields):
    r = classify(fields["golden"])
    assert r.is_pisot and r.is_parry and r.is_simple_parry and r.v_size == 2 and r.preperiod == 0
    r = classify(fields["quad-preperiodic"])
    assert not r.is_simple_parry and r.preperiod == 1
    r = classify(fields["simple-odd-a"])
    assert r.is_simple_parry and r.v_size == 4 and not r.is_unit
