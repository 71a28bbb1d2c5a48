"""Real number fields Q(beta) with exact element arithmetic and certified embeddings.

Elements are rational coordinate vectors in the power basis 1, beta, ...,
beta^(d-1).  Order comparisons refine a dyadic isolating interval of beta
until the sign of the element is decided; equality is always exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import mpmath

from .linalg import solve_rational
from .poly import (
    IntPolynomial,
    Interval,
    PolynomialError,
    count_roots_in,
    format_interval,
    isolate_real_roots,
    minimal_polynomial,
    refine_root,
    squarefree_part,
)

START_BITS = 64


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Ball:
    """Closed disk (or real interval when ``center`` is real) with mpmath center."""

    center: object
    radius: object

    @property
    def is_real(self) -> bool:
        return not isinstance(self.center, mpmath.mpc)

    def abs_upper(self):
        return abs(self.center) + self.radius

    def abs_lower(self):
        return max(abs(self.center) - self.radius, mpmath.mpf(0))

    def contains(self, value, slack=0) -> bool:
        return abs(mpmath.mpc(value) - mpmath.mpc(self.center)) <= self.radius + slack


class NumberField:
    """Q(beta) for a real algebraic integer beta > 1 given by its minimal polynomial.

    Embedding index 0 is the distinguished root beta; indices 1..r-1 are the
    other real conjugates in ascending order; indices r..r+s-1 are the complex
    conjugates with positive imaginary part, ordered by real part.
    """

    def __init__(self, minpoly: IntPolynomial, root: Interval):
        if not minpoly.is_monic():
            raise FieldError(f"minimal polynomial {minpoly} is not monic")
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self._lock = threading.Lock()
        if count_roots_in(minpoly, root) != 1:
            raise FieldError(f"{format_interval(root)} does not isolate a root of {minpoly}")
        self._interval = refine_root(minpoly, root, Fraction(1, 2**8))
        while self._interval[0] <= 1 < self._interval[1]:
            self._interval = refine_root(minpoly, self._interval, (self._interval[1] - self._interval[0]) / 2)
        if self._interval[1] <= 1:
            raise FieldError(f"distinguished root of {minpoly} is not > 1")
        self._bounds_cache: dict[int, tuple[list[int], list[int]]] = {}
        self._ball_cache: dict[int, list[Ball]] = {}
        real_roots = isolate_real_roots(minpoly)
        self.r = len(real_roots)
        a, b = self._interval
        self.other_real_roots = [
            iv
            for iv in real_roots
            if max(a, iv[0]) > min(b, iv[1]) or count_roots_in(minpoly, (max(a, iv[0]), min(b, iv[1]))) != 1
        ]
        assert len(self.other_real_roots) == self.r - 1
        self.s = (self.degree - self.r) // 2
        self._power_sums: list[int] | None = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, root: Interval | None = None) -> "NumberField":
        """Field of the real root of `p` selected by `root` (default: the largest real root)."""
        if p.is_zero() or p.degree < 1:
            raise FieldError("polynomial must have positive degree")
        if not p.is_monic():
            raise FieldError(f"{p} is not monic; beta must be an algebraic integer")
        sq = squarefree_part(p)
        if root is None:
            roots = isolate_real_roots(sq)
            if not roots:
                raise FieldError(f"{p} has no real root > 1")
            root = roots[-1]
        else:
            n = count_roots_in(sq, root)
            if n != 1:
                raise FieldError(f"selector {format_interval(root)} matches {n} real roots of {p}")
        root = refine_root(sq, root, (root[1] - root[0]) / 2**8)
        if root[1] <= 1:
            raise FieldError(f"{p} has no real root > 1 in the selected interval")
        while root[0] <= 1 < root[1]:
            root = refine_root(sq, root, (root[1] - root[0]) / 2)
        if root[1] <= 1:
            raise FieldError(f"selected root of {p} is not > 1")
        return cls(minimal_polynomial(p, root), root)

    @classmethod
    def from_text(cls, text: str, root: Interval | None = None) -> "NumberField":
        return cls.from_polynomial(IntPolynomial.parse(text), root)

    def __repr__(self) -> str:
        return f"NumberField({str(self.minpoly)!r}, beta~{float(self.approx()):.6g})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.minpoly == other.minpoly and self.overlaps(other)

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def overlaps(self, other: "NumberField") -> bool:
        a, b = self.interval(), other.interval()
        return a[0] <= b[1] and b[0] <= a[1]

    # -- elements ---------------------------------------------------------------

    def element(self, coords: Iterable) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            return FieldElement(self, reduce_coords(c, self.minpoly.coeffs))
        return FieldElement(self, tuple(c) + (Fraction(0),) * (self.degree - len(c)))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        return self.element([value])

    @property
    def zero(self) -> "FieldElement":
        return self.element([])

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def gen(self) -> "FieldElement":
        """The element beta itself."""
        if self.degree == 1:
            return self.element([-self.minpoly.coeffs[0]])
        return self.element([0, 1])

    @property
    def gen_inverse(self) -> "FieldElement":
        return self.gen.inverse()

    def from_inverse_powers(self, digits: Sequence[int]) -> "FieldElement":
        """sum_j digits[j] * beta^(-j), j starting at 0."""
        inv = self.gen_inverse
        acc = self.zero
        for c in reversed(digits):
            acc = acc * inv + self(c)
        return acc

    # -- the distinguished root ---------------------------------------------------

    def interval(self, bits: int | None = None) -> Interval:
        """Dyadic isolating interval of beta, refined to width 2^-bits when requested."""
        with self._lock:
            if bits is not None:
                a, b = self._interval
                target = Fraction(1, 2**bits)
                if b - a > target:
                    self._interval = refine_root(self.minpoly, self._interval, target)
            return self._interval

    def approx(self, dps: int = 30):
        a, b = self.interval(int(dps * 3.4) + 8)
        with mpmath.workdps(dps):
            return (mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator) / 2

    def _power_bounds(self, bits: int) -> tuple[list[int], list[int]]:
        cached = self._bounds_cache.get(bits)
        if cached is not None:
            return cached
        a, b = self.interval(bits + 2 * self.degree + 8)
        scale = 2**bits
        lo, hi = [], []
        pa, pb = Fraction(1), Fraction(1)
        for _ in range(self.degree):
            x, y = pa * scale, pb * scale
            lo.append(x.numerator // x.denominator)
            hi.append(-((-y.numerator) // y.denominator))
            pa, pb = pa * a, pb * b
        with self._lock:
            self._bounds_cache[bits] = (lo, hi)
        return lo, hi

    def _scaled_bounds(self, coords: Sequence[Fraction], bits: int) -> tuple[int, int, int]:
        den = lcm(*(c.denominator for c in coords))
        lo_p, hi_p = self._power_bounds(bits)
        lo = hi = 0
        for c, l, h in zip(coords, lo_p, hi_p):
            n = c.numerator * (den // c.denominator)
            if n >= 0:
                lo += n * l
                hi += n * h
            else:
                lo += n * h
                hi += n * l
        return lo, hi, den << bits

    def sign(self, coords: Sequence[Fraction]) -> int:
        if not any(coords[1:]):
            c = coords[0]
            return (c > 0) - (c < 0)
        bits = START_BITS
        while True:
            lo, hi, _ = self._scaled_bounds(coords, bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def floor(self, coords: Sequence[Fraction]) -> int:
        if not any(coords[1:]):
            c = coords[0]
            return c.numerator // c.denominator
        bits = START_BITS
        while True:
            lo, hi, scale = self._scaled_bounds(coords, bits)
            fl, fh = lo // scale, hi // scale
            if fl == fh:
                return fl
            bits *= 2

    # -- conjugates and embeddings ----------------------------------------------------

    @property
    def num_embeddings(self) -> int:
        return self.r + self.s

    def conjugate_balls(self, bits: int = START_BITS) -> list[Ball]:
        """Certified balls around all r + s embeddings of beta, radius below 2^-bits."""
        cached = self._ball_cache.get(bits)
        if cached is not None:
            return cached
        eps = Fraction(1, 2 ** (bits + 1))
        with mpmath.workprec(bits + 32):
            balls = [_real_ball(refine_root(self.minpoly, self.interval(bits + 1), eps))]
            for iv in self.other_real_roots:
                balls.append(_real_ball(refine_root(self.minpoly, iv, eps)))
            if self.s:
                balls.extend(self._complex_balls(bits))
        with self._lock:
            self._ball_cache[bits] = balls
        return balls

    def _complex_balls(self, bits: int) -> list[Ball]:
        d = self.degree
        wp = bits + 32
        coeffs = list(reversed(self.minpoly.coeffs))
        while True:
            with mpmath.workprec(wp):
                roots = [mpmath.mpc(z) for z in mpmath.polyroots(coeffs, maxsteps=500, extraprec=wp)]
                radii = []
                for i, z in enumerate(roots):
                    den = mpmath.mpc(1)
                    for j, y in enumerate(roots):
                        if j != i:
                            den *= z - y
                    w = mpmath.polyval(coeffs, z) / den
                    radii.append(d * abs(w) + mpmath.mpf(2) ** (-(wp - 8)))
                disjoint = all(
                    abs(roots[i] - roots[j]) > radii[i] + radii[j] for i in range(d) for j in range(i + 1, d)
                )
                upper = [k for k, z in enumerate(roots) if z.imag > radii[k]]
                ok = disjoint and len(upper) == self.s and all(radii[k] <= mpmath.mpf(2) ** (-bits) for k in upper)
                if ok:
                    out = [Ball(+roots[k], +radii[k]) for k in upper]
                    out.sort(key=lambda b: (b.center.real, b.center.imag))
                    return out
            wp *= 2
            if wp > 1 << 16:  # pragma: no cover
                raise FieldError("could not certify complex conjugates")

    def embed(self, x: "FieldElement", which: int, precision=mpmath.mpf(2) ** -50) -> Ball:
        """Ball containing the image of `x` under embedding `which`, radius <= precision."""
        if not 0 <= which < self.num_embeddings:
            raise FieldError(f"embedding index {which} out of range 0..{self.num_embeddings - 1}")
        if x.is_rational():
            return Ball(mpmath.mpf(x.coords[0].numerator) / x.coords[0].denominator, mpmath.mpf(0))
        precision = mpmath.mpf(precision)
        bits = START_BITS
        while True:
            ball = self.conjugate_balls(bits)[which]
            with mpmath.workprec(bits + 64):
                z, r = ball.center, ball.radius
                az = abs(z)
                val = mpmath.mpf(0)
                rad = mpmath.mpf(0)
                for k in range(self.degree - 1, -1, -1):
                    c = x.coords[k]
                    val = val * z + mpmath.mpf(c.numerator) / c.denominator
                for k, c in enumerate(x.coords):
                    if k and c:
                        rad += abs(mpmath.mpf(c.numerator) / c.denominator) * ((az + r) ** k - az**k)
                rad += mpmath.mpf(2) ** (-(bits + 40)) * (1 + abs(val))
                if rad <= precision:
                    return Ball(val, rad)
            bits *= 2

    def embedding_is_real(self, which: int) -> bool:
        return which < self.r

    # -- classification helpers ---------------------------------------------------------

    def is_unit(self) -> bool:
        return abs(self.minpoly.coeffs[0]) == 1

    def is_pisot(self) -> bool:
        """All conjugates other than beta lie strictly inside the unit disk."""
        if self.degree == 1:
            return True
        if self.degree > 2 and self.minpoly.is_reciprocal():
            # roots come in pairs z, 1/z, so some conjugate has modulus >= 1
            return False
        bits = START_BITS
        while True:
            balls = self.conjugate_balls(bits)[1:]
            if any(b.abs_lower() > 1 for b in balls):
                return False
            if all(b.abs_upper() < 1 for b in balls):
                return True
            bits *= 2

    def max_conjugate_modulus_upper(self, bits: int = START_BITS):
        """Certified upper bound for the largest modulus among non-distinguished conjugates."""
        balls = self.conjugate_balls(bits)[1:]
        return max((b.abs_upper() for b in balls), default=mpmath.mpf(0))

    def power_sums(self) -> list[int]:
        """Traces Tr(beta^m) for m = 0 .. 2d-2, by Newton's identities."""
        if self._power_sums is None:
            d = self.degree
            # e-coefficients of monic x^d + c_{d-1} x^{d-1} + ... + c_0
            c = self.minpoly.coeffs
            s = [d]
            for m in range(1, 2 * d - 1):
                total = 0
                for i in range(1, min(m, d) + 1):
                    total -= c[d - i] * (s[m - i] if m - i > 0 else 0)
                if m <= d:
                    total -= m * c[d - m]
                s.append(total)
            self._power_sums = s
        return self._power_sums

    def trace(self, x: "FieldElement") -> Fraction:
        s = self.power_sums()
        return sum((c * s[i] for i, c in enumerate(x.coords)), Fraction(0))


def _real_ball(iv: Interval) -> Ball:
    a, b = iv
    lo = mpmath.mpf(a.numerator) / a.denominator
    hi = mpmath.mpf(b.numerator) / b.denominator
    return Ball((lo + hi) / 2, (hi - lo) / 2 + mpmath.mpf(2) ** (-(mpmath.mp.prec - 4)) * (1 + abs(hi)))


def reduce_coords(c: Sequence[Fraction], minpoly_coeffs: Sequence[int]) -> tuple[Fraction, ...]:
    d = len(minpoly_coeffs) - 1
    r = list(c)
    for i in range(len(r) - 1, d - 1, -1):
        t = r[i]
        if t:
            base = i - d
            for j in range(d):
                if minpoly_coeffs[j]:
                    r[base + j] -= t * minpoly_coeffs[j]
        r[i] = 0
    r = r[:d] + [Fraction(0)] * (d - len(r))
    return tuple(r)


class FieldElement:
    """Element of Q(beta), immutable, with exact arithmetic."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(x * other for x in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(o.coords):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, reduce_coords(prod, self.field.minpoly.coeffs))

    __rmul__ = __mul__

    def times_beta(self) -> "FieldElement":
        return FieldElement(self.field, reduce_coords((Fraction(0),) + self.coords, self.field.minpoly.coeffs))

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix whose column j holds the coordinates of self * beta^j."""
        cols = []
        cur = self
        for _ in range(self.field.degree):
            cols.append(cur.coords)
            cur = cur.times_beta()
        return [list(row) for row in zip(*cols)]

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        sol = solve_rational(self.multiplication_matrix(), [1] + [0] * (self.field.degree - 1))
        assert sol is not None
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(x / other for x in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def is_integral(self) -> bool:
        """Integer coordinates in the power basis."""
        return all(c.denominator == 1 for c in self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords == other.coords and (self.field is other.field or self.field == other.field)

    def __hash__(self) -> int:
        return hash(self.coords)

    def compare(self, other) -> int:
        """-1, 0 or 1 as self is less than, equal to or greater than other."""
        return self.field.sign((self - other).coords)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def floor(self) -> int:
        return self.field.floor(self.coords)

    def ceil(self) -> int:
        if self.is_rational():
            c = self.coords[0]
            return -((-c.numerator) // c.denominator)
        return self.field.floor(self.coords) + 1

    def __float__(self) -> float:
        return float(self.field.embed(self, 0).center)

    def embed(self, which: int = 0, precision=mpmath.mpf(2) ** -50) -> Ball:
        return self.field.embed(self, which, precision)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("b" if i == 1 else f"b^{i}")
                coef = str(c) if (i == 0 or c != 1) else ""
                terms.append(f"{coef}{'*' if coef and mono else ''}{mono}")
        return " + ".join(terms) if terms else "0"


def field_compare(x: FieldElement, y: FieldElement) -> str:
    c = x.compare(y)
    return {-1: "Less", 0: "Equal", 1: "Greater"}[c]


def floor_of(x: FieldElement) -> int:
    return x.floor()


def embed(x: FieldElement, which: int, precision=mpmath.mpf(2) ** -50) -> Ball:
    return x.field.embed(x, which, precision)


__all__ = [
    "Ball",
    "FieldElement",
    "FieldError",
    "NumberField",
    "PolynomialError",
    "embed",
    "field_compare",
    "floor_of",
    "reduce_coords",
]
