"""Bicritical rational maps in factored form ``post o (z -> z^d) o pre``.

Every bicritical map of degree ``d`` factors this way, so storing the two
Moebius maps and the degree is lossless. Critical points are
``pre^-1({0, inf})``, critical values are ``post({0, inf})``, and iterates
are only ever evaluated as chains, never expanded into coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import sphere
from .errors import BadDegree, SingularCoefficients, SingularMatrix
from .sphere import (
    DEFAULT_TOL, EPS, INFINITY, ZERO, MoebiusMap, SpherePoint, Tolerance,
    chordal_distance, normalize_point,
)


@dataclass(frozen=True, eq=False)
class PointPair:
    """An unordered pair of distinct points (critical points or values)."""

    first: SpherePoint
    second: SpherePoint

    def __iter__(self) -> Iterator[SpherePoint]:
        yield self.first
        yield self.second

    def contains(self, p: SpherePoint, eps: float = EPS) -> bool:
        return min(chordal_distance(p, self.first), chordal_distance(p, self.second)) < eps

    def distance(self, other: "PointPair") -> float:
        """Hausdorff-style distance between the pairs, minimized over matchings."""
        straight = max(chordal_distance(self.first, other.first),
                       chordal_distance(self.second, other.second))
        swapped = max(chordal_distance(self.first, other.second),
                      chordal_distance(self.second, other.first))
        return min(straight, swapped)

    def isclose(self, other: "PointPair", eps: float = EPS) -> bool:
        return self.distance(other) < eps

    def image(self, t: MoebiusMap) -> "PointPair":
        return PointPair(sphere.apply(t, self.first), sphere.apply(t, self.second))

    def __repr__(self) -> str:
        return f"PointPair({self.first!r}, {self.second!r})"


@dataclass(frozen=True, eq=False)
class BicriticalMap:
    """The degree-``d`` map ``post o (z -> z^d) o pre``."""

    pre: MoebiusMap
    degree: int
    post: MoebiusMap

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 2:
            raise BadDegree(f"degree must be an integer >= 2, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def d(self) -> int:
        return self.degree

    def __call__(self, p) -> SpherePoint:
        return evaluate(self, sphere.point(p))

    def eval_arrays(self, z: np.ndarray, w: np.ndarray):
        z, w = sphere.apply_arrays(self.pre, z, w)
        return sphere.apply_arrays(self.post, z ** self.degree, w ** self.degree)

    def iterate_arrays(self, k: int, z: np.ndarray, w: np.ndarray):
        for _ in range(k):
            z, w = self.eval_arrays(z, w)
        return z, w

    def conjugate_by(self, h: MoebiusMap) -> "BicriticalMap":
        """``h^-1 o f o h``, again in factored form."""
        return BicriticalMap(sphere.compose(self.pre, h), self.degree,
                             sphere.compose(h.inverse(), self.post))

    def __repr__(self) -> str:
        return f"BicriticalMap(pre={self.pre!r}, degree={self.degree}, post={self.post!r})"


def from_normal_form(alpha, beta, gamma, delta, d: int) -> BicriticalMap:
    """``z -> (alpha z^d + beta) / (gamma z^d + delta)``."""
    if int(d) != d or d < 2:
        raise BadDegree(f"degree must be an integer >= 2, got {d!r}")
    try:
        post = MoebiusMap(alpha, beta, gamma, delta)
    except SingularMatrix as exc:
        raise SingularCoefficients(
            f"alpha*delta - beta*gamma vanishes for ({alpha}, {beta}, {gamma}, {delta})") from exc
    return BicriticalMap(sphere.IDENTITY, int(d), post)


def power_map(d: int, sign: int = 1) -> BicriticalMap:
    """``z -> z^d`` or, with ``sign=-1``, ``z -> z^-d``."""
    if sign == 1:
        return from_normal_form(1, 0, 0, 1, d)
    return from_normal_form(0, 1, 1, 0, d)


def evaluate(f: BicriticalMap, p: SpherePoint) -> SpherePoint:
    q = sphere.apply(f.pre, p)
    return sphere.apply(f.post, normalize_point(q.z ** f.degree, q.w ** f.degree))


def iterate_eval(f: BicriticalMap, k: int, p: SpherePoint) -> SpherePoint:
    if k < 1:
        raise ValueError(f"iterate count must be >= 1, got {k}")
    for _ in range(k):
        p = evaluate(f, p)
    return p


def orbit(f: BicriticalMap, k: int, p: SpherePoint) -> list[SpherePoint]:
    """``[p, f(p), ..., f^(k-1)(p)]``."""
    out = [p]
    for _ in range(k - 1):
        out.append(evaluate(f, out[-1]))
    return out


def critical_points(f: BicriticalMap) -> PointPair:
    inv = f.pre.inverse()
    return PointPair(sphere.apply(inv, ZERO), sphere.apply(inv, INFINITY))


def critical_values(f: BicriticalMap) -> PointPair:
    return PointPair(sphere.apply(f.post, ZERO), sphere.apply(f.post, INFINITY))


def power_map_gap(f: BicriticalMap) -> float:
    """How far the critical points are from coinciding with the critical values."""
    return critical_points(f).distance(critical_values(f))


def is_power_map(f: BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    return power_map_gap(f) < tol.eps


def is_near_power_map(f: BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Not a power map, but only by a margin below ``10 eps``.

    The deck group jumps from order ``d^k`` to at most ``4d`` across this
    boundary, so results for such maps are numerically fragile.
    """
    gap = power_map_gap(f)
    return tol.eps <= gap < 10 * tol.eps


def is_critically_coalescing(f: BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    v1, v2 = critical_values(f)
    return chordal_distance(evaluate(f, v1), evaluate(f, v2)) < tol.eps


def critical_union_size(f: BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of distinct points in ``C_f u V_f`` (2, 3 or 4)."""
    pts: list[SpherePoint] = []
    for p in (*critical_points(f), *critical_values(f)):
        if all(chordal_distance(p, q) >= tol.eps for q in pts):
            pts.append(p)
    return len(pts)


def local_degree(f: BicriticalMap, k: int, p: SpherePoint,
                 tol: Tolerance = DEFAULT_TOL) -> int:
    """Local degree of ``f^k`` at ``p``: ``d`` per critical point met on the orbit.

    Orbit points count as critical within ``10 eps``; rounding along the
    orbit would otherwise undercount.
    """
    if k < 1:
        raise ValueError(f"iterate count must be >= 1, got {k}")
    crit = critical_points(f)
    deg = 1
    for q in orbit(f, k, sphere.point(p)):
        if crit.contains(q, 10 * tol.eps):
            deg *= f.degree
    return deg


def preimages(f: BicriticalMap, q: SpherePoint) -> list[SpherePoint]:
    """The ``d`` solutions of ``f(z) = q`` (with multiplicity at critical values)."""
    r = sphere.apply(f.post.inverse(), sphere.point(q))
    d = f.degree
    inv_pre = f.pre.inverse()
    if r.w == 0 or r.z == 0:
        root = r
        return [sphere.apply(inv_pre, root)] * d
    # r = [z : 1] or [1 : w]; take d-th roots of the affine coordinate
    a = r.z / r.w if abs(r.w) >= abs(r.z) else r.w / r.z
    base = abs(a) ** (1.0 / d) * cmath.exp(1j * cmath.phase(a) / d)
    out = []
    for j in range(d):
        root = base * cmath.exp(2j * math.pi * j / d)
        pt = normalize_point(root, 1) if abs(r.w) >= abs(r.z) else normalize_point(1, root)
        out.append(sphere.apply(inv_pre, pt))
    return out


def iterated_preimages(f: BicriticalMap, k: int, q: SpherePoint) -> list[SpherePoint]:
    """The ``d^k`` points of ``f^-k(q)``, by ``k`` rounds of root extraction."""
    layer = [sphere.point(q)]
    for _ in range(k):
        layer = [p for x in layer for p in preimages(f, x)]
    return layer


def same_map(f: BicriticalMap, g: BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Pointwise agreement on random samples; factorizations are not unique."""
    if f.degree != g.degree:
        return False
    z, w = sphere.random_points(tol.rng(salt=17), tol.n_samples)
    fz, fw = f.eval_arrays(z, w)
    gz, gw = g.eval_arrays(z, w)
    return bool(np.all(sphere.chordal_arrays(fz, fw, gz, gw) < 10 * tol.eps))
