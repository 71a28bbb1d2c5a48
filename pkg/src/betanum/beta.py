"""Beta-expansion dynamics: quasi-greedy expansion of 1, admissibility, finiteness checks."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence, Union

from .field import FieldElement, NumberField, reduce_coords

DEFAULT_MAX_ITER = 512
DEFAULT_FIN_CAP = 5000
DEFAULT_J = 8


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicWord:
    """Eventually periodic digit sequence ``preperiod (period)^inf``, normalized on construction."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __init__(self, preperiod: Sequence[int], period: Sequence[int]):
        pre, per = _normalize(tuple(int(x) for x in preperiod), tuple(int(x) for x in period))
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str) -> "PeriodicWord":
        """Parse ``"1100^w"`` (pure period) or ``"2(1)^w"``; digits may be comma separated."""
        t = text.strip().replace(" ", "")
        m = re.fullmatch(r"([0-9,]*)\(([0-9,]+)\)\^w", t) or re.fullmatch(r"()([0-9,]+)\^w", t)
        if not m:
            raise WordError(f"malformed digit word {text!r}; expected e.g. '1100^w' or '2(1)^w'")
        pre, per = (_digits(g) for g in m.groups())
        if not any(per):
            raise WordError(f"period of {text!r} is all zero")
        return cls(pre, per)

    @property
    def k(self) -> int:
        return len(self.preperiod)

    @property
    def n(self) -> int:
        """Length of preperiod plus period (the size of V_beta for a Parry number)."""
        return len(self.preperiod) + len(self.period)

    def is_purely_periodic(self) -> bool:
        return not self.preperiod

    def __getitem__(self, j: int) -> int:
        """Digit a_j, 1-indexed."""
        if j < 1:
            raise IndexError("digits are indexed from 1")
        if j <= self.k:
            return self.preperiod[j - 1]
        return self.period[(j - self.k - 1) % len(self.period)]

    def prefix(self, length: int) -> list[int]:
        return [self[j] for j in range(1, length + 1)]

    def max_digit(self) -> int:
        return max(self.preperiod + self.period)

    def is_weakly_decreasing(self) -> bool:
        seq = self.prefix(self.n + len(self.period))
        return all(x >= y for x, y in zip(seq, seq[1:]))

    def longest_zero_run(self) -> int:
        seq = self.preperiod + self.period * 2
        best = run = 0
        for x in seq:
            run = run + 1 if x == 0 else 0
            best = max(best, run)
        return min(best, len(seq))

    def __str__(self) -> str:
        sep = "," if any(x > 9 for x in self.preperiod + self.period) else ""
        per = sep.join(map(str, self.period))
        if not self.preperiod:
            return f"{per}^w"
        return f"{sep.join(map(str, self.preperiod))}({per})^w"


def _digits(s: str) -> tuple[int, ...]:
    if not s:
        return ()
    if "," in s:
        return tuple(int(x) for x in s.split(",") if x)
    return tuple(int(ch) for ch in s)


def _normalize(pre: tuple[int, ...], per: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not per:
        raise WordError("empty period")
    p = len(per)
    for q in range(1, p + 1):
        if p % q == 0 and per[:q] * (p // q) == per:
            per = per[:q]
            break
    while pre and pre[-1] == per[-1]:
        per = (pre[-1],) + per[:-1]
        pre = pre[:-1]
    return pre, per


Digits = Union[Sequence[int], PeriodicWord]


def _as_eventually_periodic(w: Digits) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if isinstance(w, PeriodicWord):
        return w.preperiod, w.period
    return tuple(w), (0,)


def compare_sequences(u: Digits, v: Digits) -> int:
    """Lexicographic comparison of two eventually periodic sequences (finite ones padded by 0^inf)."""
    up, uq = _as_eventually_periodic(u)
    vp, vq = _as_eventually_periodic(v)
    horizon = max(len(up), len(vp)) + lcm(len(uq), len(vq))
    for j in range(horizon):
        x = up[j] if j < len(up) else uq[(j - len(up)) % len(uq)]
        y = vp[j] if j < len(vp) else vq[(j - len(vp)) % len(vq)]
        if x != y:
            return -1 if x < y else 1
    return 0


def shifts(w: Digits) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All distinct shifts of an eventually periodic sequence, as (preperiod, period) pairs."""
    pre, per = _as_eventually_periodic(w)
    for j in range(len(pre)):
        yield pre[j:], per
    for j in range(len(per)):
        yield (), per[j:] + per[:j]


def is_admissible(word: Digits, a: PeriodicWord) -> bool:
    """Parry condition: every shift of `word` is lexicographically below a_1 a_2 ...."""
    for pre, per in shifts(word):
        if _cmp_raw(pre, per, a) >= 0:
            return False
    return True


def _cmp_raw(pre, per, a: PeriodicWord) -> int:
    horizon = max(len(pre), a.k) + lcm(len(per), len(a.period))
    for j in range(horizon):
        x = pre[j] if j < len(pre) else per[(j - len(pre)) % len(per)]
        y = a[j + 1]
        if x != y:
            return -1 if x < y else 1
    return 0


# -- quasi-greedy expansion of 1 ---------------------------------------------------


@dataclass(frozen=True)
class VSet:
    """The orbit T~^j(1), j = 0 .. n-1, closing up at index `cycle_entry`."""

    elements: tuple[FieldElement, ...]
    cycle_entry: int

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


class NotParryWithinBound(Exception):
    def __init__(self, prefix: list[int], max_iter: int):
        super().__init__(f"no recurrence in the quasi-greedy orbit of 1 within {max_iter} steps")
        self.prefix = prefix
        self.max_iter = max_iter


def quasi_greedy_expansion(field: NumberField, max_iter: int = DEFAULT_MAX_ITER) -> tuple[PeriodicWord, VSet]:
    """Iterate x -> beta*x - ceil(beta*x) + 1 from 1 exactly until the orbit repeats."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    x = field.one
    seen = {x.coords: 0}
    orbit = [x]
    digits: list[int] = []
    for j in range(1, max_iter + 1):
        y = x.times_beta()
        a = y.ceil() - 1
        x = y - a
        digits.append(a)
        prev = seen.get(x.coords)
        if prev is not None:
            word = PeriodicWord(digits[:prev], digits[prev:])
            return word, VSet(tuple(orbit), prev)
        seen[x.coords] = j
        orbit.append(x)
    raise NotParryWithinBound(digits, max_iter)


def word_value(field: NumberField, word: PeriodicWord) -> FieldElement:
    """Exact value of sum_j a_j beta^(-j) in Q(beta)."""
    inv = field.gen_inverse
    pre = field.zero
    power = field.one
    for a in word.preperiod:
        power = power * inv
        pre = pre + power * a
    block = field.zero
    q = field.one
    for a in word.period:
        q = q * inv
        block = block + q * a
    return pre + power * block / (field.one - q)


# -- finiteness -------------------------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    steps: int
    digits: tuple[int, ...]
    kind: str = dc_field(default="Finite", init=False)


@dataclass(frozen=True)
class Periodic:
    preperiod: int
    period: int
    orbit: tuple[FieldElement, ...]
    digits: tuple[int, ...] = ()
    kind: str = dc_field(default="Periodic", init=False)


@dataclass(frozen=True)
class Unknown:
    cap: int
    kind: str = dc_field(default="Unknown", init=False)


FinStatus = Union[Finite, Periodic, Unknown]


def _beta_step(field: NumberField, coords: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    y = reduce_coords((Fraction(0),) + coords, field.minpoly.coeffs)
    d = field.floor(y)
    return d, (y[0] - d,) + y[1:]


def fin_membership(x: FieldElement, cap: int = DEFAULT_FIN_CAP) -> FinStatus:
    """Follow T_beta(x) = beta*x - floor(beta*x) exactly until 0, a repeat, or `cap` steps."""
    field = x.field
    if x.compare(0) < 0 or x.compare(1) >= 0:
        raise ValueError(f"{x!r} is not in [0, 1)")
    coords = x.coords
    seen = {coords: 0}
    orbit = [coords]
    digits: list[int] = []
    if not any(coords):
        return Finite(0, ())
    for step in range(1, cap + 1):
        d, coords = _beta_step(field, coords)
        digits.append(d)
        if not any(coords):
            return Finite(step, tuple(digits))
        prev = seen.get(coords)
        if prev is not None:
            elems = tuple(FieldElement(field, c) for c in orbit)
            return Periodic(prev, step - prev, elems, tuple(digits))
        seen[coords] = step
        orbit.append(coords)
    return Unknown(cap)


class _FinCache:
    """Shared verdicts for orbit states across many membership queries."""

    def __init__(self, field: NumberField, cap: int):
        self.field = field
        self.cap = cap
        self.depth: dict[tuple, int] = {}  # state -> steps to reach 0
        self.cyclic: set[tuple] = set()

    def status(self, coords: tuple) -> tuple[str, int]:
        """('Finite', depth) | ('Periodic', 0) | ('Unknown', 0)."""
        path = []
        cur = coords
        on_path: dict[tuple, int] = {}
        for _ in range(self.cap + 1):
            if not any(cur):
                base = 0
                break
            if cur in self.depth:
                base = self.depth[cur]
                break
            if cur in self.cyclic or cur in on_path:
                self.cyclic.update(path)
                return "Periodic", 0
            on_path[cur] = len(path)
            path.append(cur)
            _, cur = _beta_step(self.field, cur)
        else:
            return "Unknown", 0
        for i, state in enumerate(reversed(path), start=1):
            self.depth[state] = base + i
        return "Finite", self.depth.get(coords, 0)


def frac(x: FieldElement) -> FieldElement:
    return x - x.floor()


def inverse_power_domain(field: NumberField, J: int, C: int) -> Iterator[tuple[tuple[int, ...], FieldElement]]:
    """Distinct fractional parts of sum_{j=1..J} c_j beta^(-j), c_j in [0, C], in lexicographic order of c.

    The c_0 term only shifts by an integer, so after reduction modulo 1 it
    contributes no new elements and is fixed at 0.
    """
    inv = field.gen_inverse
    powers = []
    p = field.one
    for _ in range(J):
        p = p * inv
        powers.append(p)
    seen = set()

    def rec(j: int, acc: FieldElement, coeffs: tuple[int, ...]):
        if j == J:
            y = frac(acc)
            if y.coords not in seen:
                seen.add(y.coords)
                yield (0,) + coeffs, y
            return
        term = field.zero
        for c in range(C + 1):
            yield from rec(j + 1, acc + term, coeffs + (c,))
            term = term + powers[j]

    yield from rec(0, field.zero, ())


@dataclass
class PFReport:
    verdict: str  # PassByCriterion | PassSampled | Counterexample | NotRun
    J: int | None = None
    C: int | None = None
    count: int = 0
    inconclusive: int = 0
    counterexample: FieldElement | None = None
    counterexample_coeffs: tuple[int, ...] | None = None
    counterexample_status: FinStatus | None = None
    f_implied_if_pf: bool = False

    @property
    def holds(self) -> bool | None:
        if self.verdict == "Counterexample":
            return False
        if self.verdict == "NotRun":
            return None
        return True

    @property
    def certified(self) -> bool:
        return self.verdict == "PassByCriterion" or (
            self.verdict == "Counterexample" and isinstance(self.counterexample_status, Periodic)
        )


def pf_check(
    field: NumberField,
    J: int = DEFAULT_J,
    C: int | None = None,
    cap: int = DEFAULT_FIN_CAP,
    word: PeriodicWord | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> PFReport:
    """Positive finiteness: decreasing-digit criterion, else bounded enumeration of Z_+[1/beta] mod 1.

    With `samples`, a seeded random subset of the enumeration domain is tested instead.
    """
    if word is None:
        word, _ = quasi_greedy_expansion(field)
    if word.is_weakly_decreasing():
        return PFReport("PassByCriterion")
    if C is None:
        C = field.gen.ceil()
    cache = _FinCache(field, cap)
    report = PFReport("PassSampled", J=J, C=C, f_implied_if_pf=True)
    domain: Iterator = inverse_power_domain(field, J, C)
    if samples is not None:
        import random

        pool = list(domain)
        rng = random.Random(seed)
        domain = iter(rng.sample(pool, min(samples, len(pool))))
    for coeffs, y in domain:
        report.count += 1
        status, _ = cache.status(y.coords)
        if status == "Unknown":
            report.inconclusive += 1
        elif status == "Periodic":
            report.verdict = "Counterexample"
            report.counterexample = y
            report.counterexample_coeffs = coeffs
            report.counterexample_status = fin_membership(y, cap)
            return report
    return report


def find_non_finite(field: NumberField, J: int = DEFAULT_J, C: int | None = None, cap: int = DEFAULT_FIN_CAP):
    """First element of the Z[1/beta] enumeration domain whose beta-expansion is not finite.

    Coefficients range over [-C, C] so that differences (hence all of
    Z[1/beta] at desk scale) are covered; returns (coeffs, x, status) or None.
    """
    if C is None:
        C = field.gen.ceil()
    inv = field.gen_inverse
    powers = [inv**j for j in range(1, J + 1)]
    cache = _FinCache(field, cap)
    seen = set()
    for length in range(1, J + 1):
        for tail in itertools.product(range(-C, C + 1), repeat=length):
            if tail[-1] == 0:
                continue
            x = field.zero
            for c, p in zip(tail, powers):
                if c:
                    x = x + p * c
            y = frac(x)
            if y.coords in seen:
                continue
            seen.add(y.coords)
            status, _ = cache.status(y.coords)
            if status != "Finite":
                return (0,) + tail, y, fin_membership(y, cap)
    return None


@dataclass(frozen=True)
class Witness:
    y: FieldElement
    k: int
    y_coeffs: tuple[int, ...]


@dataclass(frozen=True)
class NoneFound:
    J: int
    C: int
    searched: int


def weak_finiteness_witness(
    x: FieldElement, J: int = DEFAULT_J, C: int | None = None, cap: int = DEFAULT_FIN_CAP
) -> Union[Witness, NoneFound]:
    """Search y in Z[1/beta] with 0 <= y < 1-x such that y and x+y both have finite expansions."""
    field = x.field
    if x.compare(0) < 0 or x.compare(1) >= 0:
        raise ValueError(f"{x!r} is not in [0, 1)")
    if C is None:
        C = field.gen.ceil()
    cache = _FinCache(field, cap)
    searched = 0
    for coeffs, y in inverse_power_domain(field, J, C):
        s = x + y
        if s.compare(1) >= 0:
            continue
        searched += 1
        sy, ky = cache.status(y.coords)
        if sy != "Finite":
            continue
        ss, ks = cache.status(s.coords)
        if ss == "Finite":
            return Witness(y, max(ky, ks), coeffs)
    return NoneFound(J, C, searched)


# -- classification -----------------------------------------------------------------


@dataclass
class ClassReport:
    is_pisot: bool
    is_parry: bool | None  # None: undecided within max_iter
    is_simple_parry: bool | None
    is_unit: bool
    v_size: int | None
    preperiod: int | None
    period_length: int | None
    word: PeriodicWord | None
    degree: int

    def to_json(self) -> dict:
        return {
            "is_pisot": self.is_pisot,
            "is_parry": "UnknownWithinBound" if self.is_parry is None else self.is_parry,
            "is_simple_parry": "UnknownWithinBound" if self.is_simple_parry is None else self.is_simple_parry,
            "is_unit": self.is_unit,
            "degree": self.degree,
            "v_size": self.v_size,
            "preperiod": self.preperiod,
            "period_length": self.period_length,
            "word": None if self.word is None else str(self.word),
        }


def classify(field: NumberField, max_iter: int = DEFAULT_MAX_ITER) -> ClassReport:
    pisot = field.is_pisot()
    try:
        word, V = quasi_greedy_expansion(field, max_iter)
    except NotParryWithinBound:
        return ClassReport(pisot, None, None, field.is_unit(), None, None, None, None, field.degree)
    return ClassReport(
        is_pisot=pisot,
        is_parry=True,
        is_simple_parry=word.k == 0,
        is_unit=field.is_unit(),
        v_size=len(V),
        preperiod=word.k,
        period_length=len(word.period),
        word=word,
        degree=field.degree,
    )
