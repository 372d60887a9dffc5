"""Projective arithmetic on the Riemann sphere and Moebius transformations.

Points are stored as normalized projective pairs ``[z : w]`` so that the
point at infinity ``[1 : 0]`` needs no special casing. Moebius maps are
2x2 complex matrices kept in a canonical form (determinant one, sign fixed)
so that projective equality reduces to comparing entries.

All comparisons go through the chordal distance

    |z1 w2 - z2 w1| / (|(z1, w1)| |(z2, w2)|)

which is bounded by one and treats infinity like any other point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateTriple, SingularMatrix, ZeroVector

EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Numerical knobs shared by every computation.

    ``eps`` bounds point and matrix comparisons, ``n_samples`` is the number
    of random points used whenever an identity between maps is verified,
    ``max_order`` caps the search for finite orders, and ``rng_seed`` seeds
    every sampler so that runs are reproducible.
    """

    eps: float = EPS
    n_samples: int = 24
    max_order: int = 4096
    rng_seed: int = 0

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps!r}")
        if self.n_samples < 3:
            raise ValueError(f"n_samples must be at least 3, got {self.n_samples!r}")
        if self.max_order < 1:
            raise ValueError(f"max_order must be positive, got {self.max_order!r}")

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.rng_seed, salt])


DEFAULT_TOL = Tolerance()


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """A point ``[z : w]`` of the Riemann sphere in canonical form.

    The coordinate of larger modulus is 1 (``w`` wins ties), so finite points
    read ``[z : 1]`` and infinity reads ``[1 : 0]``. Build instances with
    :func:`normalize_point` or :func:`point`; the raw constructor does not
    normalize.
    """

    z: complex
    w: complex

    @property
    def is_infinity(self) -> bool:
        return self.w == 0

    def to_complex(self) -> complex:
        """Affine coordinate; ``complex('inf')`` for the point at infinity."""
        if self.w == 0:
            return complex(math.inf, 0.0)
        return self.z / self.w

    def isclose(self, other: "SpherePoint", eps: float = EPS) -> bool:
        return chordal_distance(self, other) < eps

    def __repr__(self) -> str:
        if self.w == 0:
            return "SpherePoint(inf)"
        return f"SpherePoint({self.to_complex()!r})"


def normalize_point(z: complex, w: complex = 1.0) -> SpherePoint:
    """Scale the projective pair ``(z, w)`` so its larger coordinate is 1."""
    z, w = complex(z), complex(w)
    if not (cmath.isfinite(z) and cmath.isfinite(w)):
        raise ZeroVector(f"non-finite projective coordinates ({z}, {w})")
    if abs(z) > abs(w):
        return SpherePoint(1.0 + 0j, w / z)
    if w == 0:
        raise ZeroVector("both projective coordinates are zero")
    return SpherePoint(z / w, 1.0 + 0j)


INFINITY = SpherePoint(1.0 + 0j, 0j)
ZERO = SpherePoint(0j, 1.0 + 0j)


def point(x) -> SpherePoint:
    """Coerce ``x`` (a number, ``inf`` or a :class:`SpherePoint`) to a point."""
    if isinstance(x, SpherePoint):
        return x
    x = complex(x)
    if cmath.isinf(x):
        return INFINITY
    return normalize_point(x, 1.0)


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    num = abs(p.z * q.w - q.z * p.w)
    den = math.hypot(abs(p.z), abs(p.w)) * math.hypot(abs(q.z), abs(q.w))
    return min(num / den, 1.0)


# vectorized counterparts; points travel as a pair of complex arrays (z, w)

def normalize_arrays(z: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    use_z = np.abs(z) > np.abs(w)
    scale = np.where(use_z, z, w)
    return z / scale, w / scale


def chordal_arrays(z1, w1, z2, w2) -> np.ndarray:
    num = np.abs(z1 * w2 - z2 * w1)
    den = np.hypot(np.abs(z1), np.abs(w1)) * np.hypot(np.abs(z2), np.abs(w2))
    return np.minimum(num / den, 1.0)


def random_points(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``n`` points uniformly distributed on the sphere.

    A standard complex Gaussian vector in C^2 projects to the uniform
    (Fubini-Study) measure on the projective line.
    """
    g = rng.standard_normal((4, n))
    return normalize_arrays(g[0] + 1j * g[1], g[2] + 1j * g[3])


def points_to_arrays(points: Iterable[SpherePoint]) -> tuple[np.ndarray, np.ndarray]:
    pts = list(points)
    return (np.array([p.z for p in pts], dtype=complex),
            np.array([p.w for p in pts], dtype=complex))


def arrays_to_points(z: np.ndarray, w: np.ndarray) -> list[SpherePoint]:
    z, w = normalize_arrays(z, w)
    return [SpherePoint(complex(a), complex(b)) for a, b in zip(z, w)]


# ---------------------------------------------------------------------------
# Moebius maps
# ---------------------------------------------------------------------------


def _canonical_entries(a, b, c, d, eps=EPS):
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    entries = (a, b, c, d)
    if not all(cmath.isfinite(e) for e in entries):
        raise SingularMatrix(f"non-finite matrix entries {entries}")
    scale = max(abs(e) for e in entries)
    if scale == 0:
        raise SingularMatrix("zero matrix")
    a, b, c, d = (e / scale for e in entries)
    det = a * d - b * c
    if abs(det) <= eps:
        raise SingularMatrix(f"determinant {abs(det):.3e} after scaling to unit max entry")
    r = cmath.sqrt(det)
    a, b, c, d = a / r, b / r, c / r, d / r
    big = max(abs(a), abs(b), abs(c), abs(d))
    # first entry within rounding of the maximum modulus decides the sign
    for e in (a, b, c, d):
        if abs(e) >= big * (1 - 1e-9):
            lead = e
            break
    if not (lead.imag > 0 or (lead.imag == 0 and lead.real > 0)):
        a, b, c, d = -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    """``z -> (a z + b) / (c z + d)``, stored in canonical form.

    Whatever entries are passed in, the stored matrix has determinant one and
    its first entry of largest modulus has argument in ``[0, pi)``. Use
    :meth:`isclose` (or :func:`maps_equal`) for equality; ``T1 @ T2`` composes
    and ``T(p)`` applies.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = _canonical_entries(self.a, self.b, self.c, self.d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def __call__(self, p) -> SpherePoint:
        return apply(self, point(p))

    def isclose(self, other: "MoebiusMap", eps: float = EPS) -> bool:
        return maps_equal(self, other, eps)

    def is_identity(self, eps: float = EPS) -> bool:
        return maps_equal(self, IDENTITY, eps)

    def __repr__(self) -> str:
        fmt = lambda x: f"{x.real:.6g}{x.imag:+.6g}j"
        return f"MoebiusMap([[{fmt(self.a)}, {fmt(self.b)}], [{fmt(self.c)}, {fmt(self.d)}]])"


IDENTITY = MoebiusMap(1, 0, 0, 1)


def maps_equal(t1: MoebiusMap, t2: MoebiusMap, eps: float = EPS) -> bool:
    """Projective equality of two canonical matrices, entrywise within eps.

    Both signs are compared: the canonical sign convention is discontinuous
    where the leading entry is (nearly) a negative real, and rounding must not
    split one map into two.
    """
    e1, e2 = t1.entries, t2.entries
    scale = max(1.0, max(abs(x) for x in e1))
    plus = max(abs(x - y) for x, y in zip(e1, e2))
    minus = max(abs(x + y) for x, y in zip(e1, e2))
    return min(plus, minus) <= eps * scale


def scalar(k: complex) -> MoebiusMap:
    """The map ``z -> k z``."""
    return MoebiusMap(k, 0, 0, 1)


def rotation(n: int, j: int = 1) -> MoebiusMap:
    """``z -> exp(2 pi i j / n) z``."""
    return scalar(cmath.exp(2j * math.pi * j / n))


def apply(t: MoebiusMap, p: SpherePoint) -> SpherePoint:
    return normalize_point(t.a * p.z + t.b * p.w, t.c * p.z + t.d * p.w)


def compose(t1: MoebiusMap, t2: MoebiusMap) -> MoebiusMap:
    """``t1 o t2``: apply ``t2`` first."""
    a1, b1, c1, d1 = t1.entries
    a2, b2, c2, d2 = t2.entries
    return MoebiusMap(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2,
                      c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)


def inverse(t: MoebiusMap) -> MoebiusMap:
    return t.inverse()


def power(t: MoebiusMap, n: int) -> MoebiusMap:
    """``t`` composed with itself ``n`` times (negative ``n`` inverts)."""
    if n < 0:
        return power(t.inverse(), -n)
    result, base = IDENTITY, t
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def conjugate(t: MoebiusMap, h: MoebiusMap) -> MoebiusMap:
    """``h^-1 o t o h``."""
    return compose(h.inverse(), compose(t, h))


def apply_arrays(t: MoebiusMap, z: np.ndarray, w: np.ndarray):
    return normalize_arrays(t.a * z + t.b * w, t.c * z + t.d * w)


def as_matrix_array(maps: Sequence[MoebiusMap]) -> np.ndarray:
    """Stack maps into an ``(n, 2, 2)`` complex array."""
    return np.array([m.matrix for m in maps], dtype=complex).reshape(-1, 2, 2)


def apply_matrix_array(mats: np.ndarray, z: np.ndarray, w: np.ndarray):
    """Apply each of ``mats`` (shape ``(n, 2, 2)``) to each point: result ``(n, m)``."""
    a = mats[:, 0, 0, None]
    b = mats[:, 0, 1, None]
    c = mats[:, 1, 0, None]
    d = mats[:, 1, 1, None]
    return normalize_arrays(a * z[None, :] + b * w[None, :], c * z[None, :] + d * w[None, :])


def fixed_points(t: MoebiusMap, eps: float = EPS) -> list[SpherePoint] | None:
    """Fixed points of ``t``: two points, one (parabolic case), or None.

    ``None`` is returned for the identity, which fixes every point. The fixed
    points are the eigenvectors of the matrix.
    """
    if t.is_identity(eps):
        return None
    a, b, c, d = t.entries
    tr = a + d
    disc = cmath.sqrt(tr * tr - 4)
    lambdas = [(tr + disc) / 2]
    if abs(disc) > eps:
        lambdas.append((tr - disc) / 2)
    out = []
    for lam in lambdas:
        v1 = (b, lam - a)
        v2 = (lam - d, c)
        z, w = v1 if abs(v1[0]) + abs(v1[1]) >= abs(v2[0]) + abs(v2[1]) else v2
        out.append(normalize_point(z, w))
    return out


def _prime_factors(n: int) -> list[int]:
    primes, p = [], 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def order_of(t: MoebiusMap, tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Smallest ``n <= tol.max_order`` with ``t^n = id``, or None.

    Elliptic maps are rotations by ``2 pi theta`` in suitable coordinates,
    where the eigenvalue ratio is ``exp(2 pi i theta)``; the rational
    approximation of ``theta`` proposes the order, which is then confirmed by
    exact powering. Anything that fails confirmation falls back to iterated
    composition up to ``max_order``.
    """
    eps = tol.eps
    if t.is_identity(eps):
        return 1
    tr = t.trace
    if abs(tr.imag) > 1e-6 or abs(tr.real) > 2 + 1e-6:
        return None  # loxodromic or hyperbolic
    disc = cmath.sqrt(tr * tr - 4)
    ratio = ((tr + disc) / 2) ** 2
    theta = (cmath.phase(ratio) / (2 * math.pi)) % 1.0
    n = Fraction(theta).limit_denominator(tol.max_order).denominator
    if power(t, n).is_identity(eps) and all(
            not power(t, n // p).is_identity(eps) for p in _prime_factors(n)):
        return n
    acc = t
    for m in range(2, tol.max_order + 1):
        acc = compose(acc, t)
        if acc.is_identity(eps):
            return m
    return None


def mobius_from_three_points(sources: Sequence, targets: Sequence,
                             eps: float = EPS) -> MoebiusMap:
    """The unique Moebius map sending ``sources[i]`` to ``targets[i]``."""
    src = [point(p) for p in sources]
    dst = [point(q) for q in targets]
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("exactly three source and three target points are required")
    for pts, name in ((src, "source"), (dst, "target")):
        for i in range(3):
            for j in range(i + 1, 3):
                if chordal_distance(pts[i], pts[j]) <= eps:
                    raise DegenerateTriple(f"{name} points {i} and {j} coincide")
    to_std_src = _to_standard(src)
    to_std_dst = _to_standard(dst)
    return compose(to_std_dst.inverse(), to_std_src)


def _to_standard(pts: Sequence[SpherePoint]) -> MoebiusMap:
    """Map sending the three points to 0, inf, 1."""
    (x1, y1), (x2, y2), (x3, y3) = ((p.z, p.w) for p in pts)
    # L_i(v) = det[v, p_i] vanishes exactly at p_i
    l1_p3 = x3 * y1 - y3 * x1
    l2_p3 = x3 * y2 - y3 * x2
    return MoebiusMap(y1 * l2_p3, -x1 * l2_p3, y2 * l1_p3, -x2 * l1_p3)


def commute(t1: MoebiusMap, t2: MoebiusMap, eps: float = EPS) -> bool:
    return maps_equal(compose(t1, t2), compose(t2, t1), eps)


def setwise_equal(ps: Sequence[SpherePoint], qs: Sequence[SpherePoint],
                  eps: float = EPS) -> bool:
    """Whether two finite point sets agree up to a bijection within eps."""
    if len(ps) != len(qs):
        return False
    remaining = list(qs)
    for p in ps:
        for i, q in enumerate(remaining):
            if chordal_distance(p, q) < eps:
                del remaining[i]
                break
        else:
            return False
    return True
