"""Hypothesis B decided through (PF) and (QM), and the empirical cross-check against the search."""

from __future__ import annotations

from dataclasses import dataclass

from .beta import DEFAULT_FIN_CAP, DEFAULT_J, PFReport, PeriodicWord, VSet, pf_check, quasi_greedy_expansion
from .field import NumberField
from .gnum import Counterexample, GSequence, HypBBounds, HypBOutcome, hyp_b_falsify
from .substitution import QMReport, qm_report


@dataclass
class HypBDecision:
    pf: PFReport
    qm: QMReport
    holds: bool
    certified: bool
    kind: str = "DecidedByTheorem"

    @property
    def grade(self) -> str:
        return "certified" if self.certified else "empirical"


def hyp_b_decide(
    field: NumberField,
    word: PeriodicWord | None = None,
    V: VSet | None = None,
    J: int = DEFAULT_J,
    cap: int = DEFAULT_FIN_CAP,
) -> HypBDecision:
    """Hypothesis B holds iff (PF) and (QM) hold.

    The answer is certified when every ingredient it rests on is exact:
    a positive answer needs (PF) from the decreasing-digits criterion, a
    negative one needs either (QM) failing or a (PF) counterexample with
    an exactly detected periodic orbit.  A sampled (PF) pass is empirical.
    """
    if word is None or V is None:
        word, V = quasi_greedy_expansion(field)
    qm = qm_report(field, word, V)
    if not qm.holds:
        # (QM) alone settles the answer; still run the cheap criterion for the record
        pf = pf_check(field, J=J, cap=cap, word=word) if word.is_weakly_decreasing() else PFReport("NotRun")
        return HypBDecision(pf, qm, False, True)
    pf = pf_check(field, J=J, cap=cap, word=word)
    holds = pf.verdict != "Counterexample"
    return HypBDecision(pf, qm, holds, pf.certified)


@dataclass
class SweepResult:
    """Search outcomes for b = 0..b_max and whether they agree with the decision."""

    outcomes: dict[int, HypBOutcome]
    decision: HypBDecision

    @property
    def some_b_clean(self) -> bool:
        return any(not isinstance(o, Counterexample) for o in self.outcomes.values())

    @property
    def consistent(self) -> bool:
        return self.some_b_clean == self.decision.holds


def theorem3_sweep(field: NumberField, b_max: int = 8, bounds: HypBBounds = HypBBounds()) -> SweepResult:
    """Empirical Hypothesis B (some b without counterexample) against the (PF) and (QM) verdict."""
    word, V = quasi_greedy_expansion(field)
    G = GSequence(word)
    outcomes = {b: hyp_b_falsify(G, b, bounds) for b in range(b_max + 1)}
    return SweepResult(outcomes, hyp_b_decide(field, word, V))
