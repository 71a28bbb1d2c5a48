"""Named bases shipped with the tool, their stored classifications, and base-spec parsing."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .beta import NotParryWithinBound, PeriodicWord, VSet, WordError, classify, quasi_greedy_expansion
from .field import FieldError, NumberField
from .poly import IntPolynomial, PolynomialError, parse_interval
from .substitution import beta_polynomial


class BaseSpecError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    polynomial: str
    record: dict  # expected classification
    carry_reference: dict | None = None  # (modulus, residue) -> value, as published


# Sign classes for the plastic carries as printed alongside the zero class k = 1 mod 3.
_PLASTIC_PUBLISHED_CARRIES = {(6, 5): -1, (6, 0): -1, (3, 1): 0, (6, 2): 1, (6, 3): 1}


def _rec(word, v, pisot=True, unit=True, degree=None):
    w = PeriodicWord.parse(word)
    return {
        "is_pisot": pisot,
        "is_parry": True,
        "is_simple_parry": w.k == 0,
        "is_unit": unit,
        "degree": degree,
        "v_size": v,
        "preperiod": w.k,
        "period_length": len(w.period),
        "word": str(w),
    }


CORPUS: dict[str, CorpusEntry] = {
    e.name: e
    for e in [
        CorpusEntry("golden", "x^2-x-1", _rec("10^w", 2, degree=2)),
        CorpusEntry("plastic", "x^3-x-1", _rec("10000^w", 5, degree=3), _PLASTIC_PUBLISHED_CARRIES),
        CorpusEntry("quad-preperiodic", "x^2-3x+1", _rec("2(1)^w", 2, degree=2)),
        CorpusEntry("cubic-t2", "x^3-2x^2+x-1", _rec("1100^w", 4, degree=3)),
        CorpusEntry("cubic-t3", "x^3-3x^2+x-1", _rec("2200^w", 4, degree=3)),
        CorpusEntry("simple-odd-a", "x^3-3x^2+2x-2", _rec("2101^w", 4, unit=False, degree=3)),
        CorpusEntry("simple-odd-b", "x^3-3x^2+x-1", _rec("2200^w", 4, degree=3)),
        CorpusEntry("int3", "x-3", _rec("2^w", 1, unit=False, degree=1)),
    ]
}


@dataclass
class ResolvedBase:
    label: str
    field: NumberField
    word: PeriodicWord | None
    V: VSet | None
    entry: CorpusEntry | None = None

    def describe(self) -> dict:
        # the dyadic cell of width 2^-64 containing beta, independent of cached refinements
        f = (self.field.gen * 2**64).floor()
        return {
            "label": self.label,
            "minpoly": str(self.field.minpoly),
            "beta": mpmath.nstr(self.field.approx(30), 20),
            "interval": [str(Fraction(f, 2**64)), str(Fraction(f + 1, 2**64))],
            "word": None if self.word is None else str(self.word),
        }


def _resolve_field(field: NumberField, label: str, entry: CorpusEntry | None = None) -> ResolvedBase:
    try:
        word, V = quasi_greedy_expansion(field)
    except NotParryWithinBound:
        # still usable for classification; commands needing the word refuse later
        return ResolvedBase(label, field, None, None, entry)
    return ResolvedBase(label, field, word, V, entry)


def load_corpus(name: str) -> ResolvedBase:
    try:
        entry = CORPUS[name]
    except KeyError:
        raise BaseSpecError(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS)}") from None
    return _resolve_field(NumberField.from_text(entry.polynomial), name, entry)


_SELECTOR = re.compile(r"^(?P<poly>[^@]*)@(?P<sel>.*)$")


def parse_base_spec(text: str) -> ResolvedBase:
    """Polynomial (optionally ``poly@[a/b, c/d]``) or digit word such as ``1100^w``.

    A digit word is accepted only if it is the quasi-greedy expansion of 1 for
    the dominant root of its own beta-polynomial.
    """
    t = text.strip()
    if "^w" in t:
        try:
            word = PeriodicWord.parse(t)
        except WordError as e:
            raise BaseSpecError(str(e)) from None
        if word.n == 1 and word.period == (0,):  # pragma: no cover - rejected by parse
            raise BaseSpecError("zero word")
        p = beta_polynomial(word)
        try:
            field = NumberField.from_polynomial(p)
        except (FieldError, PolynomialError) as e:
            raise BaseSpecError(f"{t}: {e}") from None
        resolved = _resolve_field(field, t)
        if resolved.word is None:
            raise BaseSpecError(f"{t}: the dominant root of {p} has no eventually periodic quasi-greedy expansion within bound")
        if resolved.word != word:
            raise BaseSpecError(
                f"{t} is not the quasi-greedy expansion of 1 for the dominant root of {p} "
                f"(that expansion is {resolved.word})"
            )
        return resolved
    m = _SELECTOR.match(t)
    poly_text, root = t, None
    if m:
        poly_text = m.group("poly")
        try:
            root = parse_interval(m.group("sel"))
        except (PolynomialError, ValueError) as e:
            raise BaseSpecError(f"bad root selector: {e}", len(poly_text) + 1) from None
    try:
        p = IntPolynomial.parse(poly_text)
    except PolynomialError as e:
        raise BaseSpecError(str(e), getattr(e, "position", None)) from None
    try:
        field = NumberField.from_polynomial(p, root)
    except (FieldError, PolynomialError) as e:
        raise BaseSpecError(str(e)) from None
    return _resolve_field(field, t)


def check_entry(entry: CorpusEntry) -> tuple[bool, dict, dict]:
    """(matches, computed, stored) for the classification of a corpus entry."""
    field = NumberField.from_text(entry.polynomial)
    computed = classify(field).to_json()
    return computed == entry.record, computed, entry.record


def parse_coords(text: str, field: NumberField):
    """Power-basis coordinates ``c0,c1,...`` (rationals allowed) into a field element."""
    try:
        coords = [Fraction(x.strip()) for x in text.split(",")]
    except ValueError:
        raise BaseSpecError(f"bad element coordinates {text!r}; expected e.g. '-63/8,25/8'") from None
    if len(coords) > field.degree:
        raise BaseSpecError(f"{len(coords)} coordinates given for a degree-{field.degree} field")
    return field.element(coords + [Fraction(0)] * (field.degree - len(coords)))
