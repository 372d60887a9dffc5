"""Seeded random bicritical maps for the property suites.

Generic maps have pre- and post-composition matrices with independent
standard complex Gaussian entries. Generic maps almost never have a deck
group beyond ``Deck(f)``, so the ``coalescing`` families build
``(z^d - a) / (z^d + a)`` (dihedral deck groups for even ``d``) and maps
whose critical and value sets share a point, each hidden behind a random
conjugation.
"""

from __future__ import annotations

import numpy as np

from . import bicritical as bc
from .sphere import DEFAULT_TOL, MoebiusMap, Tolerance

FAMILIES = ("generic", "coalescing", "coalescing-unit", "shared-point")


def _gaussian(rng: np.random.Generator, size=None):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def random_moebius(rng: np.random.Generator, min_det: float = 0.1) -> MoebiusMap:
    """Gaussian matrix, redrawn until ``|ad - bc| > min_det``."""
    while True:
        a, b, c, d = _gaussian(rng, 4)
        if abs(a * d - b * c) > min_det:
            return MoebiusMap(a, b, c, d)


def _nonzero(rng: np.random.Generator, floor: float = 0.1) -> complex:
    while True:
        a = complex(_gaussian(rng))
        if abs(a) > floor:
            return a


def random_map(rng: np.random.Generator, d: int, family: str = "generic",
               tol: Tolerance = DEFAULT_TOL) -> bc.BicriticalMap:
    """A random degree-``d`` bicritical map from one of :data:`FAMILIES`.

    Maps within ``10 eps`` of a power map are rejected and redrawn.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    while True:
        if family == "generic":
            f = bc.BicriticalMap(random_moebius(rng), d, random_moebius(rng))
        else:
            if family == "coalescing":
                a = _nonzero(rng)
                core = bc.from_normal_form(1, -a, 1, a, d)
            elif family == "coalescing-unit":
                core = bc.from_normal_form(1, -1, 1, 1, d)
            else:
                # post(0) = inf makes one critical value a critical point
                alpha, beta = _nonzero(rng), _nonzero(rng)
                core = bc.from_normal_form(alpha, beta, _nonzero(rng), 0, d)
            f = core.conjugate_by(random_moebius(rng))
        if bc.power_map_gap(f) >= 10 * tol.eps:
            return f


def sample_maps(seed: int, count: int, degrees, coalescing: bool = False,
                tol: Tolerance = DEFAULT_TOL) -> list[tuple[str, bc.BicriticalMap]]:
    """``count`` maps cycling through ``degrees``; with ``coalescing`` the
    families cycle too, otherwise every map is generic."""
    degrees = list(degrees)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not degrees:
        raise ValueError("at least one degree is required")
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        d = degrees[i % len(degrees)]
        family = FAMILIES[(i // len(degrees)) % len(FAMILIES)] if coalescing else "generic"
        out.append((family, random_map(rng, d, family, tol)))
    return out
