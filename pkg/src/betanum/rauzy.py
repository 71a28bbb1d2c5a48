"""Archimedean Rauzy fractal: conjugate-space embedding, truncated point clouds, translate overlap."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import product

import mpmath
import numpy as np

from .beta import PeriodicWord, quasi_greedy_expansion
from .field import FieldElement, NumberField
from .substitution import lattice_basis

DEFAULT_MAX_POINTS = 10**5
_EPS = float(np.finfo(float).eps)


class NotSupported(ValueError):
    """The construction does not apply to this base."""


@dataclass(frozen=True)
class EmbeddingPoint:
    coords: tuple[float, ...]
    error_radius: float

    def __add__(self, other: "EmbeddingPoint") -> "EmbeddingPoint":
        return EmbeddingPoint(
            tuple(x + y for x, y in zip(self.coords, other.coords)),
            self.error_radius + other.error_radius + 2 * _EPS * max(map(abs, self.coords + other.coords), default=0),
        )


def _split(ball_center) -> list[float]:
    z = mpmath.mpc(ball_center)
    return [float(z.real), float(z.imag)]


def delta_prime(x: FieldElement, precision=mpmath.mpf(2) ** -60) -> EmbeddingPoint:
    """Images of x under every embedding except the distinguished one.

    Real conjugates contribute one coordinate each, complex pairs (one
    representative per pair) contribute real and imaginary part.
    """
    field = x.field
    if field.degree == 1:
        raise NotSupported("degree 1: the contracting space is trivial")
    coords: list[float] = []
    err = 0.0
    for which in range(1, field.num_embeddings):
        ball = field.embed(x, which, precision)
        if field.embedding_is_real(which):
            coords.append(float(mpmath.re(ball.center)))
        else:
            coords.extend(_split(ball.center))
        err = max(err, float(ball.radius))
    # conversion to binary64 rounds each coordinate once
    err += _EPS * max(map(abs, coords), default=0.0)
    return EmbeddingPoint(tuple(coords), err)


def _conjugates(field: NumberField) -> tuple[np.ndarray, float]:
    balls = field.conjugate_balls(96)[1:]
    gam = np.array([complex(mpmath.mpc(b.center)) for b in balls])
    return gam, max(float(b.radius) for b in balls)


def _to_real(field: NumberField, values: np.ndarray) -> np.ndarray:
    """(N, r+s-1) complex embedding values -> (N, d-1) real coordinates."""
    cols = []
    for which in range(1, field.num_embeddings):
        col = values[:, which - 1]
        if field.embedding_is_real(which):
            cols.append(col.real)
        else:
            cols.extend([col.real, col.imag])
    return np.stack(cols, axis=1) if cols else np.zeros((len(values), 0))


def _admissible_levels(a: PeriodicWord, L: int, max_points: int, gam: np.ndarray):
    """Level-wise generation of admissible words, most significant digit first.

    States of the Parry automaton are the lengths of the matched prefix of
    a; a digit below a_{i+1} resets to 0, equality advances, and after a_n
    the state folds back to k.  Children are emitted parent by parent in
    increasing digit order, so every level is lexicographically sorted.
    """
    top = a.max_digit()
    nxt_digit = np.array([a[i + 1] for i in range(a.n)])
    nxt_state = np.array([i + 1 if i + 1 < a.n else a.k for i in range(a.n)])
    states = np.zeros(1, dtype=np.int64)
    values = np.zeros((1, len(gam)), dtype=complex)
    for _ in range(L):
        parents, digits = [], []
        for e in range(top + 1):
            ok = np.nonzero(e <= nxt_digit[states])[0]
            parents.append(ok)
            digits.append(np.full(len(ok), e))
        parents = np.concatenate(parents)
        digits = np.concatenate(digits)
        order = np.lexsort((digits, parents))
        parents, digits = parents[order], digits[order]
        if len(parents) > max_points:
            parents, digits = parents[:max_points], digits[:max_points]
        s = states[parents]
        states = np.where(digits == nxt_digit[s], nxt_state[s], 0)
        values = values[parents] * gam + digits[:, None]
    return values


@dataclass
class PointCloud:
    points: np.ndarray  # (N, d-1)
    depth: int
    truncation_radius: float
    numeric_error: float
    lattice: np.ndarray  # (rank, d-1)
    rho: float

    @property
    def error_radius(self) -> float:
        return self.truncation_radius + self.numeric_error

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        dim = self.points.shape[1]
        w.writerow([f"x{i}" for i in range(dim)] + ["error_radius"])
        err = f"{self.error_radius:.17g}"
        for p in self.points:
            w.writerow([f"{v:.17g}" for v in p] + [err])
        return buf.getvalue()

    def to_json(self, include_points: bool = True) -> dict:
        out = {
            "depth": self.depth,
            "count": int(len(self.points)),
            "dimension": int(self.points.shape[1]),
            "truncation_radius": self.truncation_radius,
            "numeric_error": self.numeric_error,
            "rho_upper": self.rho,
            "lattice": self.lattice.tolist(),
        }
        if include_points:
            out["points"] = self.points.tolist()
        return out

    def to_ppm(self, size: int = 256) -> str:
        """Plain (P3) pixmap of the cloud; one-dimensional clouds are drawn as a strip."""
        pts = self.points
        if pts.shape[1] == 1:
            pts = np.hstack([pts, np.zeros_like(pts)])
        xy = pts[:, :2]
        lo, hi = xy.min(axis=0), xy.max(axis=0)
        span = np.where(hi - lo > 0, hi - lo, 1.0)
        ij = np.floor((xy - lo) / span * (size - 1)).astype(int)
        h = size if self.points.shape[1] > 1 else 16
        if self.points.shape[1] == 1:
            ij[:, 1] = 0
        img = np.full((h, size), 255, dtype=int)
        for x, y in ij:
            if self.points.shape[1] == 1:
                img[:, x] = 0
            else:
                img[h - 1 - y, x] = 0
        lines = [f"P3\n{size} {h}\n255"]
        for row in img:
            lines.append(" ".join(f"{v} {v} {v}" for v in row))
        return "\n".join(lines) + "\n"


def rauzy_cloud(field: NumberField, L: int, max_points: int = DEFAULT_MAX_POINTS) -> PointCloud:
    """Points sum_{j<L} delta'(e_j beta^j) over admissible words, with a certified tail radius."""
    if L < 0 or max_points < 1:
        raise ValueError("need L >= 0 and max_points >= 1")
    if field.degree == 1:
        raise NotSupported("degree 1: the contracting space is trivial")
    if not field.is_pisot():
        raise NotSupported("not a Pisot number: the conjugate series need not converge")
    if not field.is_unit():
        raise NotSupported(
            "not an algebraic unit: the representation space needs a non-archimedean "
            "(beta-adic) factor, which is not implemented"
        )
    a, V = quasi_greedy_expansion(field)
    gam, gam_err = _conjugates(field)
    rho = float(field.max_conjugate_modulus_upper())
    digit_max = field.gen.ceil() - 1
    # sum_{j >= L} (ceil(beta) - 1) rho^j, rounded upward
    tail = digit_max * rho**L / (1 - rho) * (1 + 4 * _EPS)
    values = _admissible_levels(a, L, max_points, gam)
    pts = _to_real(field, values)
    # Horner rounding plus the uncertainty in the conjugates themselves
    bound = digit_max / (1 - rho)
    numeric = 4 * (L + 1) * _EPS * (bound + 1) + digit_max * gam_err / (1 - rho) ** 2
    lattice = np.array([delta_prime(v).coords for v in lattice_basis(V)]).reshape(-1, pts.shape[1])
    return PointCloud(pts, L, tail, numeric, lattice, rho)


@dataclass(frozen=True)
class OverlapEstimate:
    overlap_fraction: float
    coverage_fraction: float
    hit_cells: int
    box_cells: int
    translates: int

    def to_json(self) -> dict:
        return {
            "overlap_fraction": self.overlap_fraction,
            "coverage_fraction": self.coverage_fraction,
            "hit_cells": self.hit_cells,
            "box_cells": self.box_cells,
            "translates": self.translates,
        }


def tiling_overlap_estimate(cloud: PointCloud, translates: int = 2, cell: float = 0.05) -> OverlapEstimate:
    """Rasterize the cloud and its lattice translates n_1 l_1 + ... with |n_i| <= translates.

    overlap = cells hit by at least two translates / cells hit;
    coverage = hit cells inside the cloud's bounding box / cells of that box.
    """
    if cell <= 0:
        raise ValueError("cell size must be positive")
    pts = cloud.points
    if len(pts) == 0:
        raise ValueError("empty cloud")
    base = np.unique(np.floor(pts / cell).astype(np.int64), axis=0)
    lo = np.floor(pts.min(axis=0) / cell).astype(np.int64)
    hi = np.floor(pts.max(axis=0) / cell).astype(np.int64)
    counts: dict[tuple, int] = {}
    shifts = []
    lat = cloud.lattice if len(cloud.lattice) else np.zeros((0, pts.shape[1]))
    for ns in product(range(-translates, translates + 1), repeat=len(lat)):
        t = np.asarray(ns, dtype=float) @ lat if len(lat) else np.zeros(pts.shape[1])
        shifts.append(t)
    for t in shifts:
        cells = base if not t.any() else np.unique(np.floor((pts + t) / cell).astype(np.int64), axis=0)
        for c in map(tuple, cells):
            counts[c] = counts.get(c, 0) + 1
    multi = sum(1 for v in counts.values() if v >= 2)
    box_cells = int(np.prod(hi - lo + 1))
    inside = sum(1 for c in counts if all(l <= x <= h for x, l, h in zip(c, lo, hi)))
    return OverlapEstimate(multi / len(counts), inside / box_cells, len(counts), box_cells, len(shifts))


def cloud_json(cloud: PointCloud) -> str:
    return json.dumps(cloud.to_json())
