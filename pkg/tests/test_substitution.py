import pytest

from betanum.beta import PeriodicWord, VSet, quasi_greedy_expansion
from betanum.linalg import solve_rational
from betanum.substitution import (
    QMInconsistency,
    beta_polynomial,
    beta_substitution,
    char_poly,
    eigenvalue_one_excluded,
    incidence_matrix,
    lattice_basis,
    parity_check,
    qm_rank_check,
    qm_recurrence_check,
    qm_report,
    qm_trace_check,
    verify_GM,
)
from betanum.corpus import CORPUS


def test_substitution_templates():
    assert beta_substitution(PeriodicWord.parse("10^w")).images == ((1, 2), (1,))
    assert beta_substitution(PeriodicWord.parse("10000^w")).images == ((1, 2), (3,), (4,), (5,), (1,))
    assert beta_substitution(PeriodicWord.parse("1100^w")).images == ((1, 2), (1, 3), (4,), (1,))
    s = beta_substitution(PeriodicWord.parse("2(1)^w"))
    assert s.images == ((1, 1, 2), (1, 2))
    assert s((1, 2)) == (1, 1, 2, 1, 2)


def test_incidence_matrices():
    assert incidence_matrix(beta_substitution(PeriodicWord.parse("10^w"))) == [[1, 1], [1, 0]]
    assert incidence_matrix(beta_substitution(PeriodicWord.parse("2^w"))) == [[3]]
    m = incidence_matrix(beta_substitution(PeriodicWord.parse("10000^w")))
    assert m[0] == [1, 0, 0, 0, 1]
    assert all(m[i + 1][i] == 1 for i in range(4))


@pytest.mark.parametrize(
    "word, poly",
    [("10000^w", "x^5-x^4-1"), ("10^w", "x^2-x-1"), ("2^w", "x-3"), ("2(1)^w", "x^2-3x+1")],
)
def test_char_poly_examples(word, poly):
    a = PeriodicWord.parse(word)
    assert str(char_poly(incidence_matrix(beta_substitution(a)))) == poly
    assert str(beta_polynomial(a)) == poly


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_char_poly_equals_beta_polynomial_and_gm(name, expansions, fields):
    a, V = expansions[name]
    m = incidence_matrix(beta_substitution(a))
    cp = char_poly(m)
    assert cp == beta_polynomial(a)
    assert cp.exact_quotient(fields[name].minpoly) is not None
    assert verify_GM(a, 30)


@pytest.mark.parametrize("word", ["1100^w", "2200^w", "2101^w", "101^w", "3201^w", "11(01)^w", "3(1)^w"])
def test_random_words_char_poly(word):
    a = PeriodicWord.parse(word)
    assert char_poly(incidence_matrix(beta_substitution(a))) == beta_polynomial(a)


def test_rank_examples(expansions, fields):
    r = qm_rank_check(expansions["golden"][1], fields["golden"])
    assert (r.rank, r.holds) == (1, True)
    r = qm_rank_check(expansions["plastic"][1], fields["plastic"])
    assert (r.rank, r.holds) == (3, False)
    r = qm_rank_check(expansions["cubic-t2"][1], fields["cubic-t2"])
    assert (r.rank, r.holds) == (2, True)


def test_recurrence_examples(expansions, fields):
    assert qm_recurrence_check(fields["golden"], expansions["golden"][0]).f == [0, 0]
    r = qm_recurrence_check(fields["plastic"], expansions["plastic"][0])
    assert not r.holds and r.f == [1, 0, -1, -1, 0]
    assert qm_recurrence_check(fields["cubic-t2"], expansions["cubic-t2"][0]).holds


def test_trace_examples(expansions, fields):
    f = fields["golden"]
    r = qm_trace_check(f, expansions["golden"][1])
    assert r.holds
    assert f.trace(r.c * f.one) == 1 and f.trace(r.c * (f.gen - 1)) == 1
    assert not qm_trace_check(fields["plastic"], expansions["plastic"][1]).holds
    r = qm_trace_check(fields["int3"], expansions["int3"][1])
    assert r.holds and r.c == fields["int3"].one


def test_parity_examples(expansions, fields):
    for name in ("cubic-t2", "simple-odd-a", "simple-odd-b"):
        a, V = expansions[name]
        p = parity_check(fields[name], V, a)
        assert p.applicable and p.holds and p.eigen_ok
        assert (p.n, p.k) == (4, 0)
    a, V = expansions["plastic"]
    assert not parity_check(fields["plastic"], V, a).applicable


# words whose orbit has exactly deg + 1 elements, found by scanning short digit words
DEG_PLUS_ONE = [
    "2101^w", "2211^w", "3102^w", "3201^w", "3322^w", "330(2)^w", "33031^w",
    "2(0011)^w", "2(2101)^w", "3(0121)^w", "3(2321)^w", "33(031)^w", "330(22)^w", "3313(2)^w",
]  # fmt: skip


@pytest.mark.parametrize("word", DEG_PLUS_ONE)
def test_parity_against_rank_on_deg_plus_one_words(word):
    from betanum.corpus import parse_base_spec

    b = parse_base_spec(word)
    assert len(b.V) == b.field.degree + 1
    p = parity_check(b.field, b.V, b.word)
    assert p.applicable and p.eigen_ok
    assert p.holds == ((p.n - p.k) % 2 == 0)
    assert p.holds == qm_rank_check(b.V, b.field).holds
    assert eigenvalue_one_excluded(incidence_matrix(beta_substitution(b.word)))


def test_eigenvalue_one_never_occurs(expansions):
    for name in ("cubic-t2", "simple-odd-a", "simple-odd-b"):
        m = incidence_matrix(beta_substitution(expansions[name][0]))
        assert eigenvalue_one_excluded(m)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_consensus(name, expansions, fields):
    a, V = expansions[name]
    r = qm_report(fields[name], a, V)
    assert r.consensus
    assert r.holds == (name != "plastic")
    if r.trace.c is not None:
        assert all(fields[name].trace(r.trace.c * v) == 1 for v in V)


def test_parity_note_flags_statement_discrepancy(expansions, fields):
    a, V = expansions["cubic-t2"]
    r = qm_report(fields["cubic-t2"], a, V)
    assert r.notes and "n - k" in r.notes[0]


def test_inconsistency_raises(fields, expansions):
    a, V = expansions["golden"]
    # a fake orbit with an independent extra element makes rank and recurrence disagree
    f = fields["golden"]
    fake = VSet(V.elements + (f.element([5, -3]),), 0)
    with pytest.raises(QMInconsistency):
        qm_report(f, a, fake)


def test_lattice_basis(expansions):
    basis = lattice_basis(expansions["cubic-t2"][1])
    assert len(basis) == 2
    V = expansions["cubic-t2"][1]
    # every difference is an integer combination of the basis (echelon form)
    cols = [list(c) for c in zip(*(b.coords for b in basis))]
    for v in V:
        x = solve_rational(cols, list((v - V.elements[0]).coords))
        assert x is not None and all(c.denominator == 1 for c in x)
