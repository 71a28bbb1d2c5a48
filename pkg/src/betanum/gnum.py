"""Linear recurrence numeration: the scale G_k, greedy G-expansions, the odometer and carry locality."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence, Union

from .beta import PeriodicWord

GDigits = list[int]  # least significant first


class GSequence:
    """G_0 = 1, G_k = sum_{j=1..k} a_j G_{k-j} + 1, cached and extended on demand."""

    def __init__(self, a: PeriodicWord):
        self.a = a
        self._values = [1]
        self._lock = threading.Lock()

    def _extend(self, K: int) -> None:
        with self._lock:
            vals = self._values
            a = self.a
            while len(vals) <= K:
                k = len(vals)
                vals.append(sum(a[j] * vals[k - j] for j in range(1, k + 1)) + 1)

    def __getitem__(self, k: int) -> int:
        if k >= len(self._values):
            self._extend(k)
        return self._values[k]

    def values(self, K: int) -> list[int]:
        """G_0 .. G_K."""
        self._extend(K)
        return self._values[: K + 1]

    def top_index(self, n: int) -> int:
        """Largest k with G_k <= n (n >= 1)."""
        k = 0
        while self[k + 1] <= n:
            k += 1
        return k


def g_values(a: PeriodicWord, K: int) -> list[int]:
    if K < 0:
        raise ValueError("K must be >= 0")
    return GSequence(a).values(K)


def greedy_g_digits(n: int, G: GSequence) -> GDigits:
    """Greedy G-expansion of n >= 0, least significant digit first; empty for 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return []
    top = G.top_index(n)
    digits = [0] * (top + 1)
    for k in range(top, -1, -1):
        g = G[k]
        if n >= g:
            digits[k], n = divmod(n, g)
    return digits


def g_evaluate(digits: Sequence[int], G: GSequence) -> int:
    return sum(e * G[k] for k, e in enumerate(digits))


def satisfies_greedy_condition(digits: Sequence[int], G: GSequence) -> bool:
    """sum_{k<K} e_k G_k < G_K for every K up to len(digits)."""
    s = 0
    for K, e in enumerate(digits):
        s += e * G[K]
        if s >= G[K + 1]:
            return False
    return all(e >= 0 for e in digits)


def odometer_successor(digits: Sequence[int], G: GSequence) -> GDigits:
    """Addition of one by local carry.

    Find the highest j whose prefix sum x(j) = sum_{k<=j} e_k G_k satisfies
    x(j) + 1 = G_{j+1}; positions 0..j become 0 and position j+1 is
    incremented.  Without such j the lowest digit is incremented.
    """
    out = list(digits)
    s = 0
    carry_at = -1
    for j, e in enumerate(out):
        s += e * G[j]
        if s + 1 == G[j + 1]:
            carry_at = j
    if carry_at < 0:
        if not out:
            return [1]
        out[0] += 1
        return out
    for i in range(carry_at + 1):
        out[i] = 0
    if carry_at + 1 == len(out):
        out.append(0)
    out[carry_at + 1] += 1
    return out


def format_digits(d: Sequence[int]) -> str:
    return ",".join(map(str, d))


# -- Hypothesis B --------------------------------------------------------------------


@dataclass(frozen=True)
class HypBBounds:
    """Search box.  m ranges over [k+b, m_max], or [k+b, k+b+m_extra] when m_max is None."""

    k_max: int = 12
    window: int = 6
    m_extra: int = 12
    n_max: int = 10**7
    m_max: int | None = None

    def m_range(self, lo: int) -> range:
        hi = lo + self.m_extra if self.m_max is None else self.m_max
        return range(lo, hi + 1)

    @classmethod
    def parse(cls, text: str) -> "HypBBounds":
        """'k_max,w,m_max,n_max'; a leading '+' on m_max makes it relative to k+b."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError("bounds are k_max,w,m_max,n_max")
        try:
            k_max, window, n_max = int(parts[0]), int(parts[1]), int(parts[3])
            if parts[2].startswith("+"):
                m_extra, m_max = int(parts[2][1:]), None
            else:
                m_extra, m_max = 0, int(parts[2])
        except ValueError:
            raise ValueError(f"bounds must be integers: {text!r}") from None
        if min(k_max, window, n_max, m_extra) < 0 or (m_max is not None and m_max < 0):
            raise ValueError("bounds must be nonnegative")
        return cls(k_max, window, m_extra, n_max, m_max)

    def to_json(self) -> dict:
        out = {"k_max": self.k_max, "window": self.window, "n_max": self.n_max}
        if self.m_max is None:
            out["m_max"] = f"k+b+{self.m_extra}"
        else:
            out["m_max"] = self.m_max
        return out


@dataclass(frozen=True)
class Counterexample:
    N: int
    m: int
    k: int
    before: tuple[int, ...]
    after: tuple[int, ...]
    kind: str = dc_field(default="CounterexampleFound", init=False)

    def replay(self, G: GSequence) -> bool:
        """Recompute both expansions; True when the low digits really change."""
        before = greedy_g_digits(self.N, G)
        after = greedy_g_digits(self.N + G[self.m], G)
        pad = lambda d: list(d) + [0] * max(0, self.k - len(d))  # noqa: E731
        return (
            tuple(before) == self.before
            and tuple(after) == self.after
            and pad(before)[: self.k] != pad(after)[: self.k]
        )


@dataclass(frozen=True)
class NoneFoundWithinBounds:
    bounds: HypBBounds
    cells: int
    kind: str = dc_field(default="NoneFoundWithinBounds", init=False)


HypBOutcome = Union[Counterexample, NoneFoundWithinBounds]


def _high_blocks(G: GSequence, lo: int, width: int, limit: int) -> list[int]:
    """Integers <= limit whose greedy expansion is supported on positions [lo, lo+width), ascending."""
    out = set()

    def rec(pos: int, value: int) -> None:
        if pos < lo:
            d = greedy_g_digits(value, G)
            if not any(d[:lo]) and len(d) <= lo + width:
                out.add(value)
            return
        g = G[pos]
        for e in range(-(-G[pos + 1] // g)):
            v = value + e * g
            if v > limit:
                break
            rec(pos - 1, v)

    rec(lo + width - 1, 0)
    return sorted(out)


def _slack(G: GSequence, digits: Sequence[int], k: int) -> int:
    """Largest L such that every low < L concatenates with `digits` (zero below k) into a greedy word.

    That is min over K > k of G_K - sum_{j<K} e_j G_j.
    """
    best = None
    s = 0
    for K in range(k + 1, max(len(digits), k) + 2):
        if K - 1 < len(digits):
            s += digits[K - 1] * G[K - 1]
        gap = G[K] - s
        best = gap if best is None or gap < best else best
    return best


def hyp_b_falsify(G: GSequence, b: int, bounds: HypBBounds = HypBBounds()) -> HypBOutcome:
    """Search for N = low + high with a zero gap [k, k+b) and m >= k+b such that adding G_m
    changes one of the first k digits of the greedy expansion.

    The least counterexample in the order (k, N, m) is returned.  For fixed
    k, high and m the admissible lows form an initial segment [0, A) and the
    lows that keep their digits form another initial segment, so the
    smallest failing low is found without scanning.
    """
    if b < 0:
        raise ValueError("b must be >= 0")
    cells = 0
    for k in range(1, bounds.k_max + 1):
        Gk = G[k]
        lo = k + b
        found = None  # (N, m)
        for high in _high_blocks(G, lo, bounds.window, bounds.n_max):
            # lows below A keep low.high a greedy word with N <= n_max
            A = min(Gk, _slack(G, greedy_g_digits(high, G), k), bounds.n_max - high + 1)
            if A <= 0:
                continue
            for m in bounds.m_range(lo):
                cells += 1
                d2 = greedy_g_digits(high + G[m], G)
                if any(d2[:k]):
                    low = 0
                else:
                    low = _slack(G, d2, k)
                    if low >= A:
                        continue
                if found is None or (low + high, m) < found:
                    found = (low + high, m)
        if found is not None:
            N, m = found
            return Counterexample(N, m, k, tuple(greedy_g_digits(N, G)), tuple(greedy_g_digits(N + G[m], G)))
    return NoneFoundWithinBounds(bounds, cells)


def hyp_b_falsify_bruteforce(G: GSequence, b: int, bounds: HypBBounds) -> HypBOutcome:
    """Reference search scanning every N <= n_max directly (small bounds only)."""
    cells = 0
    for k in range(1, bounds.k_max + 1):
        for N in range(bounds.n_max + 1):
            d = greedy_g_digits(N, G)
            if any(d[k : k + b]) or len(d) > k + b + bounds.window:
                continue
            for m in bounds.m_range(k + b):
                cells += 1
                d2 = greedy_g_digits(N + G[m], G)
                pad = lambda x: list(x) + [0] * max(0, k - len(x))  # noqa: E731
                if pad(d)[:k] != pad(d2)[:k]:
                    return Counterexample(N, m, k, tuple(d), tuple(d2))
    return NoneFoundWithinBounds(bounds, cells)


# -- carries and frequencies ------------------------------------------------------------


@dataclass
class CarryPattern:
    values: list[int]
    value_set: list[int]
    period: int | None
    preperiod: int | None
    classes: dict[int, int]  # residue mod period -> value on the periodic tail
    mismatches: list[int] = dc_field(default_factory=list)  # residues disagreeing with a reference


def carry_pattern(
    G: GSequence,
    target: int,
    summands: Sequence[tuple[int, int]],
    K: int,
    reference: dict | None = None,
) -> CarryPattern:
    """c_k = G_{k+target} - sum coef * G_{k+offset}, k = 0..K, with its eventual period.

    `reference` maps (modulus, residue) to an expected value; residues of
    the computed period whose value disagrees are listed in `mismatches`.
    """
    c = [G[k + target] - sum(coef * G[k + off] for off, coef in summands) for k in range(K + 1)]
    period = pre = None
    for p in range(1, (K + 1) // 2 + 1):
        # smallest preperiod such that the tail is p-periodic
        q = len(c) - p
        start = q
        while start > 0 and c[start - 1] == c[start - 1 + p]:
            start -= 1
        if len(c) - start >= 2 * p:
            period, pre = p, start
            break
    classes = {}
    mismatches = []
    if period is not None:
        for k in range(pre, pre + period):
            classes[k % period] = c[k]
        if reference:
            for (mod, res), val in reference.items():
                for k in range(pre, len(c)):
                    if k % mod == res % mod and c[k] != val:
                        mismatches.append((mod, res % mod))
                        break
    return CarryPattern(c, sorted(set(c)), period, pre, dict(sorted(classes.items())), mismatches)


def digit_frequency(G: GSequence, N: int, positions: Sequence[int]) -> dict[int, dict[int, Fraction]]:
    """Exact frequency of each digit value at each position over the integers 0..N-1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    counts = {p: Counter() for p in positions}
    for n in range(N):
        d = greedy_g_digits(n, G)
        for p in positions:
            counts[p][d[p] if p < len(d) else 0] += 1
    return {p: {v: Fraction(c, N) for v, c in sorted(cnt.items())} for p, cnt in counts.items()}
