"""Beta-substitutions, incidence matrices and the quotient mapping condition.

Four independent routes decide (QM) and are required to agree:

* rank of the Z-module spanned by differences of V_beta,
* vanishing of f_k = sum_i p_i G_{k+i} for the minimal polynomial p,
* solvability of Tr(c * v) = 1 for all v in V_beta,
* the parity criterion when #V_beta = deg(beta) + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .beta import PeriodicWord, VSet
from .field import FieldElement, NumberField
from .gnum import GSequence
from .linalg import (
    bareiss_rank,
    berkowitz_charpoly,
    integer_row_basis,
    matvec,
    solve_rational,
)
from .poly import IntPolynomial


class QMInconsistency(RuntimeError):
    """Two applicable (QM) checkers disagree; always a bug."""


@dataclass(frozen=True)
class Substitution:
    """Substitution on letters 1..n; images[i-1] is the image of letter i."""

    images: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, word):
        return tuple(x for letter in word for x in self.images[letter - 1])

    def __str__(self) -> str:
        return ", ".join(f"{i} -> {''.join(map(str, im))}" for i, im in enumerate(self.images, start=1))


def beta_substitution(a: PeriodicWord) -> Substitution:
    """i -> 1^{a_i} (i+1) for i < n and n -> 1^{a_n} (k+1)."""
    n, k = a.n, a.k
    images = []
    for i in range(1, n + 1):
        nxt = i + 1 if i < n else k + 1
        images.append((1,) * a[i] + (nxt,))
    return Substitution(tuple(images))


def incidence_matrix(s: Substitution) -> list[list[int]]:
    """M[i][j] = number of occurrences of letter i+1 in the image of letter j+1."""
    n = s.size
    m = [[0] * n for _ in range(n)]
    for j, image in enumerate(s.images):
        for letter in image:
            m[letter - 1][j] += 1
    return m


def char_poly(m: list[list[int]]) -> IntPolynomial:
    return IntPolynomial(berkowitz_charpoly(m))


def beta_polynomial(a: PeriodicWord) -> IntPolynomial:
    """(x^n - a_1 x^{n-1} - ... - a_n) - (x^k - a_1 x^{k-1} - ... - a_k)."""
    def part(length: int) -> list[int]:
        c = [0] * (length + 1)
        c[length] = 1
        for j in range(1, length + 1):
            c[length - j] -= a[j]
        return c

    hi, lo = part(a.n), part(a.k)
    return IntPolynomial(hi[i] - (lo[i] if i < len(lo) else 0) for i in range(len(hi)))


def verify_GM(a: PeriodicWord, K: int) -> bool:
    """G_k == (1,...,1) M^k (1,0,...,0)^t for k = 0..K."""
    m = incidence_matrix(beta_substitution(a))
    G = GSequence(a)
    n = len(m)
    col = [1] + [0] * (n - 1)
    for k in range(K + 1):
        if sum(col) != G[k]:
            return False
        col = matvec(m, col)
    return True


# -- the four (QM) checkers ---------------------------------------------------------------


@dataclass
class RankVerdict:
    rank: int
    holds: bool
    basis: list[list[int]]


@dataclass
class RecurrenceVerdict:
    f: list[int]
    holds: bool


@dataclass
class TraceVerdict:
    c: FieldElement | None
    holds: bool


@dataclass
class ParityVerdict:
    applicable: bool
    holds: bool | None = None
    n: int | None = None
    k: int | None = None
    w: list[int] | None = None
    eigen_ok: bool | None = None


def qm_rank_check(V: VSet, field: NumberField) -> RankVerdict:
    """Rank of <v_i - v_0> over Z, computed as a rank over Q by fraction-free elimination."""
    rows = []
    for v in V:
        if not v.is_integral():
            raise AssertionError(f"V element {v!r} has non-integer coordinates")
        rows.append([int(x - y) for x, y in zip(v.coords, V.elements[0].coords)])
    rank = bareiss_rank(rows)
    return RankVerdict(rank, rank == field.degree - 1, integer_row_basis(rows))


def qm_recurrence_check(field: NumberField, a: PeriodicWord) -> RecurrenceVerdict:
    """f_k = sum_i p_i G_{k+i} for k < n.

    (G_k) satisfies the order-n recurrence given by the characteristic
    polynomial of the incidence matrix, hence so does (f_k); n consecutive
    zeros force f to vanish identically.
    """
    p = field.minpoly.coeffs
    G = GSequence(a)
    f = [sum(c * G[k + i] for i, c in enumerate(p)) for k in range(a.n)]
    return RecurrenceVerdict(f, not any(f))


def qm_trace_check(field: NumberField, V: VSet) -> TraceVerdict:
    """Solve Tr(c * v) = 1 for all v in V over the rationals; the witness is re-verified exactly."""
    d = field.degree
    s = field.power_sums()
    # Tr(beta^j * v) = sum_l v_l Tr(beta^(j+l))
    rows = [[sum(v.coords[l] * s[j + l] for l in range(d)) for j in range(d)] for v in V]
    sol = solve_rational(rows, [1] * len(rows))
    if sol is None:
        return TraceVerdict(None, False)
    c = field.element(sol)
    if any(field.trace(c * v) != 1 for v in V):
        raise QMInconsistency("trace witness failed exact re-verification")
    return TraceVerdict(c, True)


def parity_vector(n: int, k: int) -> list[int]:
    """Eigenvector of M_sigma for the eigenvalue -1 when #V = deg + 1 (letters 1..n)."""
    w = []
    for i in range(1, n + 1):
        if i > k:
            w.append((-1) ** i)
        else:
            w.append((-1) ** i * (1 - (-1) ** (n - k)))
    return w


def parity_check(field: NumberField, V: VSet, a: PeriodicWord) -> ParityVerdict:
    """Applicable iff #V = deg + 1; then (QM) iff (1,...,1).w = 0, i.e. iff n - k is even."""
    n, k = len(V), V.cycle_entry
    if n != field.degree + 1:
        return ParityVerdict(False, n=n, k=k)
    m = incidence_matrix(beta_substitution(a))
    w = parity_vector(n, k)
    eigen_ok = matvec(m, w) == [-x for x in w]
    return ParityVerdict(True, sum(w) == 0, n, k, w, eigen_ok)


@dataclass
class QMReport:
    rank: RankVerdict
    recurrence: RecurrenceVerdict
    trace: TraceVerdict
    parity: ParityVerdict
    consensus: bool
    holds: bool
    notes: list[str] = dc_field(default_factory=list)


def qm_report(field: NumberField, a: PeriodicWord, V: VSet, strict: bool = True) -> QMReport:
    """Run every (QM) checker and join the verdicts; disagreement raises QMInconsistency when strict."""
    rank = qm_rank_check(V, field)
    rec = qm_recurrence_check(field, a)
    tr = qm_trace_check(field, V)
    par = parity_check(field, V, a)
    verdicts = [rank.holds, rec.holds, tr.holds]
    if par.applicable:
        verdicts.append(par.holds)
        if not par.eigen_ok:
            raise QMInconsistency("constructed w is not a (-1)-eigenvector")
    consensus = len(set(verdicts)) == 1
    if not consensus and strict:
        raise QMInconsistency(f"QM checkers disagree: {verdicts}")
    notes = []
    if par.applicable:
        d = field.degree
        if ((d - par.k) % 2 == 0) != par.holds:
            notes.append(
                "parity verdict follows n - k even (n = #V = deg + 1); "
                "the 'deg - k even' phrasing gives the opposite answer here"
            )
    return QMReport(rank, rec, tr, par, consensus, rank.holds, notes)


def lattice_basis(V: VSet) -> list[FieldElement]:
    """Exact Z-basis of <V - V> as field elements."""
    field = V.elements[0].field
    rows = [[int(x - y) for x, y in zip(v.coords, V.elements[0].coords)] for v in V]
    return [field.element(r) for r in integer_row_basis(rows)]


def eigenvalue_one_excluded(m: list[list[int]]) -> bool:
    return char_poly(m)(1) != 0


def qm_report_json(r: QMReport) -> dict:
    par = r.parity
    return {
        "rank": {"rank": r.rank.rank, "holds": r.rank.holds, "basis": r.rank.basis},
        "recurrence": {"f": r.recurrence.f, "holds": r.recurrence.holds},
        "trace": {"c": r.trace.c.to_json() if r.trace.c is not None else None, "holds": r.trace.holds},
        "parity": {"applicable": par.applicable, "n": par.n, "k": par.k, "w": par.w, "holds": par.holds},
        "consensus": r.consensus,
        "holds": r.holds,
        "notes": r.notes,
    }
