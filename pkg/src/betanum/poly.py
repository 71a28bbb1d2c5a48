"""Integer polynomials, Sturm-sequence root isolation and minimal-polynomial extraction."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath


class PolynomialError(ValueError):
    """Malformed polynomial text or an invalid polynomial argument."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def _trim(coeffs: Iterable) -> list:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, constant term first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        trimmed = tuple(int(c) for c in _trim(coeffs))
        object.__setattr__(self, "coeffs", trimmed)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_polynomial(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(poly_mul(self.coeffs, other.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod(self, other: "IntPolynomial") -> tuple[list[Fraction], list[Fraction]]:
        return poly_divmod(self.coeffs, other.coeffs)

    def exact_quotient(self, other: "IntPolynomial") -> "IntPolynomial | None":
        """Quotient when `other` divides `self` in Z[x], else None."""
        q, r = poly_divmod(self.coeffs, other.coeffs)
        if r or any(c.denominator != 1 for c in q):
            return None
        return IntPolynomial(int(c) for c in q)

    def is_reciprocal(self) -> bool:
        rev = self.coeffs[::-1]
        return rev == self.coeffs or tuple(-c for c in rev) == self.coeffs

    def __str__(self) -> str:
        return format_polynomial(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({str(self)!r})"


def format_polynomial(coeffs: Sequence, var: str = "x") -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*?\s*([a-zA-Z])\s*(\^\s*(\d+))?)?\s*")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse text such as ``"x^3-x-1"`` or ``"2*x^2 - 3x + 1"``."""
    if not text or not text.strip():
        raise PolynomialError("empty polynomial", 0)
    coeffs: dict[int, int] = {}
    var = None
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise PolynomialError(f"unexpected character {text[pos]!r}", pos)
        sign, num, mono, name, _, exp = m.groups()
        if sign is None and not first:
            raise PolynomialError("missing operator between terms", m.start())
        if num is None and mono is None:
            raise PolynomialError("dangling operator", m.start())
        if name is not None:
            if var is None:
                var = name
            elif name != var:
                raise PolynomialError(f"second variable {name!r}", m.start(4))
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    if not coeffs:
        raise PolynomialError("no terms", 0)
    top = max(coeffs)
    return IntPolynomial(coeffs.get(i, 0) for i in range(top + 1))


# -- rational polynomial helpers (lists, constant term first) -----------------


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in _trim(a)]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _trim(r)
    return _trim(q), r


def poly_gcd(a: Sequence, b: Sequence) -> list[Fraction]:
    """Monic gcd over the rationals."""
    a, b = [Fraction(c) for c in _trim(a)], [Fraction(c) for c in _trim(b)]
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """Primitive integer polynomial with the distinct roots of `p`."""
    g = poly_gcd(p.coeffs, p.derivative().coeffs)
    q, _ = poly_divmod(p.coeffs, g)
    return _primitive(q)


def _primitive(q: Sequence[Fraction]) -> IntPolynomial:
    from math import gcd, lcm

    den = lcm(*(Fraction(c).denominator for c in q))
    ints = [int(Fraction(c) * den) for c in q]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPolynomial(ints)


# -- Sturm sequences ------------------------------------------------------------


def sturm_sequence(p: IntPolynomial) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while seq[-1] and len(seq[-1]) > 1:
        _, r = poly_divmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _eval(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign_variations(seq: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """A power of two strictly exceeding the modulus of every root."""
    lead = abs(p.leading)
    m = max((Fraction(abs(c), lead) for c in p.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


Interval = tuple[Fraction, Fraction]


def isolate_real_roots(p: IntPolynomial) -> list[Interval]:
    """Closed rational intervals, ascending, each containing exactly one real root.

    Endpoints are dyadic rationals; a rational root may come back as a
    degenerate interval ``(r, r)``.
    """
    if p.is_zero():
        raise PolynomialError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return []
    seq = sturm_sequence(p)

    def count(a: Fraction, b: Fraction) -> int:
        return sign_variations(seq, a) - sign_variations(seq, b)

    bound = cauchy_bound(p)
    out: list[Interval] = []
    stack = [(-bound, bound, count(-bound, bound))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1 and p(a) != 0:
            out.append((b, b) if p(b) == 0 else (a, b))
            continue
        m = (a + b) / 2
        left = count(a, m)
        stack.append((m, b, c - left))
        stack.append((a, m, left))
    out.sort()
    return out


def refine_root(p: IntPolynomial, interval: Interval, width: Fraction) -> Interval:
    """Bisect an isolating interval of a simple root until it is at most `width` wide."""
    a, b = interval
    if a == b:
        return interval
    sa = p(a)
    if sa == 0:
        return (a, a)
    if p(b) == 0:
        return (b, b)
    while b - a > width:
        m = (a + b) / 2
        sm = p(m)
        if sm == 0:
            return (m, m)
        if (sm < 0) == (sa < 0):
            a, sa = m, sm
        else:
            b = m
    return (a, b)


def count_roots_in(p: IntPolynomial, interval: Interval) -> int:
    """Number of distinct real roots of `p` in the closed interval."""
    a, b = interval
    if p.is_zero():
        raise PolynomialError("zero polynomial")
    seq = sturm_sequence(p)
    return sign_variations(seq, a) - sign_variations(seq, b) + (1 if p(a) == 0 else 0)


def format_interval(iv: Interval) -> str:
    return f"[{iv[0]}, {iv[1]}]"


def parse_interval(text: str) -> Interval:
    m = re.fullmatch(r"\s*\[\s*([-+]?\d+(?:/\d+)?)\s*,\s*([-+]?\d+(?:/\d+)?)\s*\]\s*", text)
    if not m:
        raise PolynomialError(f"malformed interval {text!r}")
    lo, hi = Fraction(m.group(1)), Fraction(m.group(2))
    if lo > hi:
        raise PolynomialError(f"empty interval {text!r}")
    return lo, hi


# -- minimal polynomial -----------------------------------------------------------


def minimal_polynomial(p: IntPolynomial, root: Interval, digits: int = 60) -> IntPolynomial:
    """Monic irreducible factor of the monic polynomial `p` vanishing at the root isolated by `root`.

    Candidate factors are products of numerically computed roots (complex
    conjugate pairs kept together), rounded to integers and accepted only
    after exact division.  Subsets are tried by increasing degree, so the
    first accepted candidate is the minimal polynomial.
    """
    if not p.is_monic():
        raise PolynomialError("minimal_polynomial expects a monic polynomial")
    sq = squarefree_part(p)
    if count_roots_in(sq, root) != 1:
        raise PolynomialError(f"interval {format_interval(root)} does not isolate a root of {p}")
    if sq.degree == 1:
        return sq
    while True:
        found = _minpoly_by_subsets(sq, root, digits)
        if found is not None:
            if p.exact_quotient(found) is None:  # pragma: no cover - sq divides p
                raise PolynomialError("internal: factor does not divide input")
            return found
        digits *= 2
        if digits > 2000:
            raise PolynomialError(f"could not extract minimal polynomial of {p}")


def _minpoly_by_subsets(sq: IntPolynomial, root: Interval, digits: int) -> IntPolynomial | None:
    with mpmath.workdps(digits):
        roots = mpmath.polyroots(list(reversed(sq.coeffs)), maxsteps=400, extraprec=4 * digits)
        tol = mpmath.mpf(10) ** (-digits // 3)
        center = (root[0] + root[1]) / 2
        target = None
        reals, pairs = [], []
        for z in roots:
            z = mpmath.mpc(z)
            if abs(z.imag) < tol:
                reals.append(z.real)
            elif z.imag > 0:
                pairs.append(z)
        lo, hi = mpmath.mpf(root[0].numerator) / root[0].denominator, mpmath.mpf(root[1].numerator) / root[1].denominator
        inside = [x for x in reals if lo - tol <= x <= hi + tol]
        if len(inside) != 1:
            target = min(reals, key=lambda x: abs(x - float(center)), default=None)
            if target is None:
                return None
        else:
            target = inside[0]
        others = [("r", x) for x in reals if x is not target] + [("c", z) for z in pairs]
        for size in range(0, len(others) + 1):
            for combo in itertools.combinations(others, size):
                factors = [[-target, 1]]
                for kind, z in combo:
                    if kind == "r":
                        factors.append([-z, 1])
                    else:
                        factors.append([z.real**2 + z.imag**2, -2 * z.real, 1])
                prod = [mpmath.mpf(1)]
                for f in factors:
                    prod = poly_mul(prod, f)
                ints = [int(mpmath.nint(c)) for c in prod]
                if any(abs(c - i) > mpmath.mpf("1e-6") for c, i in zip(prod, ints)):
                    continue
                cand = IntPolynomial(ints)
                if sq.exact_quotient(cand) is None:
                    continue
                if count_roots_in(cand, root) == 1:
                    return cand
    return None
