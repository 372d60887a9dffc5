"""Brute-force recomputation of ``Deck(f^k)`` without the lifting recursion.

A deck transformation of ``F = f^k`` permutes every fiber ``F^-1(q)``, and a
Moebius map is fixed by the images of three points. So: take a regular value
``q``, compute its ``d^k`` preimages by repeated root extraction, send three
fixed fiber points to every ordered triple of fiber points, and keep the
candidates that map the whole fiber into itself and satisfy ``F o phi = F``
on fresh samples. Only practical for ``d^k <= 64``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import bicritical as bc
from . import sphere
from .deck import DeckGroup, deck_chain, deck_identity_defect
from .errors import OracleTooLarge, VerificationFailed
from .groups import dedupe, same_set
from .sphere import DEFAULT_TOL, MoebiusMap, Tolerance

MAX_FIBER = 64
_MEMBERSHIP = 1e-6  # loose prefilter; survivors are verified at 10 eps
_SALT_VALUE = 505
_SALT_CHECK = 606


@dataclass(frozen=True, eq=False)
class OracleResult:
    k: int
    oracle_elements: tuple[MoebiusMap, ...]
    engine_elements: tuple[MoebiusMap, ...]
    match: bool


def _regular_value(f: bc.BicriticalMap, k: int, rng: np.random.Generator,
                   margin: float = 0.05) -> sphere.SpherePoint:
    """A random point at least ``margin`` from every critical value of ``f^k``."""
    crit_values = []
    layer = list(bc.critical_values(f))
    for _ in range(k):
        crit_values.extend(layer)
        layer = [bc.evaluate(f, v) for v in layer]
    for _ in range(10_000):
        z, w = sphere.random_points(rng, 1)
        q = sphere.SpherePoint(complex(z[0]), complex(w[0]))
        if all(sphere.chordal_distance(q, v) > margin for v in crit_values):
            return q
    raise VerificationFailed("could not find a regular value")


def _standard_matrices(x1, y1, x2, y2, x3, y3) -> np.ndarray:
    """Matrices sending each triple ``[x_i : y_i]`` to ``0, inf, 1`` (vectorized)."""
    l1 = x3 * y1 - y3 * x1
    l2 = x3 * y2 - y3 * x2
    m = np.empty(np.broadcast(x1, x2, x3).shape + (2, 2), dtype=complex)
    m[..., 0, 0] = y1 * l2
    m[..., 0, 1] = -x1 * l2
    m[..., 1, 0] = y2 * l1
    m[..., 1, 1] = -x2 * l1
    return m


def _spread_triple(fz: np.ndarray, fw: np.ndarray) -> list[int]:
    """Three fiber indices with large pairwise separation (greedy)."""
    dist = sphere.chordal_arrays(fz[:, None], fw[:, None], fz[None, :], fw[None, :])
    i, j = np.unravel_index(np.argmax(dist), dist.shape)
    third = int(np.argmax(np.minimum(dist[i], dist[j])))
    return [int(i), int(j), third]


def fiber_candidates(f: bc.BicriticalMap, k: int, tol: Tolerance = DEFAULT_TOL) -> list[MoebiusMap]:
    """Every Moebius map permuting regular fibers of ``f^k`` and satisfying
    ``f^k o phi = f^k`` on fresh samples.

    Fibers with fewer than four points cannot pin down a map by a probe, so a
    second fiber is added in that case; points are then only matched within
    their own fiber.
    """
    n = f.degree ** k
    if n > MAX_FIBER:
        raise OracleTooLarge(f"fiber of f^{k} has {n} points; the oracle handles at most {MAX_FIBER}")
    rng = tol.rng(_SALT_VALUE)
    n_fibers = 1 if n >= 4 else 2
    pts, labels = [], []
    for label in range(n_fibers):
        pts.extend(bc.iterated_preimages(f, k, _regular_value(f, k, rng)))
        labels.extend([label] * n)
    fz, fw = sphere.points_to_arrays(pts)
    labels = np.array(labels)
    src = _spread_triple(fz, fw)
    probe = next(i for i in range(len(pts)) if i not in src)
    s_src = _standard_matrices(*(v for i in src for v in (fz[i], fw[i])))
    same_fiber = labels[:, None] == labels[None, :]

    triples = np.array([t for t in itertools.permutations(range(len(pts)), 3)
                        if all(labels[t[i]] == labels[src[i]] for i in range(3))], dtype=int)
    survivors = []
    for start in range(0, len(triples), 20_000):
        t = triples[start:start + 20_000]
        s_dst = _standard_matrices(fz[t[:, 0]], fw[t[:, 0]], fz[t[:, 1]], fw[t[:, 1]],
                                   fz[t[:, 2]], fw[t[:, 2]])
        adj = np.empty_like(s_dst)
        adj[:, 0, 0] = s_dst[:, 1, 1]
        adj[:, 0, 1] = -s_dst[:, 0, 1]
        adj[:, 1, 0] = -s_dst[:, 1, 0]
        adj[:, 1, 1] = s_dst[:, 0, 0]
        mats = adj @ s_src
        mats /= np.abs(mats).reshape(-1, 4).max(axis=1)[:, None, None]
        # stage 1: the probe point must land in its own fiber
        pz, pw = sphere.apply_matrix_array(mats, fz[probe:probe + 1], fw[probe:probe + 1])
        d = sphere.chordal_arrays(pz, pw, fz[None, :], fw[None, :])
        d = np.where(same_fiber[probe][None, :], d, np.inf).min(axis=1)
        keep = mats[d < _MEMBERSHIP]
        if not len(keep):
            continue
        # stage 2: every point must land in its own fiber
        iz, iw = sphere.apply_matrix_array(keep, fz, fw)
        d = sphere.chordal_arrays(iz[:, :, None], iw[:, :, None], fz[None, None, :], fw[None, None, :])
        d = np.where(same_fiber[None, :, :], d, np.inf).min(axis=2).max(axis=1)
        survivors.extend(keep[d < _MEMBERSHIP])

    candidates = []
    for m in survivors:
        try:
            candidates.append(MoebiusMap.from_matrix(m))
        except sphere.SingularMatrix:
            continue
    candidates = dedupe(candidates, tol.eps)
    if not candidates:
        return []
    defect = deck_identity_defect(f, k, candidates, tol, salt=_SALT_CHECK)
    return [c for c, e in zip(candidates, defect) if e < 10 * tol.eps]


def verify_level(f: bc.BicriticalMap, k: int, tol: Tolerance = DEFAULT_TOL,
                 engine: DeckGroup | None = None) -> OracleResult:
    """Compare the oracle's ``Deck(f^k)`` with the engine's, elementwise within ``10 eps``."""
    if f.degree ** k > MAX_FIBER:
        raise OracleTooLarge(f"d^k = {f.degree ** k} exceeds {MAX_FIBER}")
    if engine is None:
        engine = deck_chain(f, k, tol)[k]
    found = fiber_candidates(f, k, tol)
    match = same_set(found, engine.elements, 10 * tol.eps)
    return OracleResult(k, tuple(found), engine.elements, match)


def run_verify(f: bc.BicriticalMap, k_max: int, tol: Tolerance = DEFAULT_TOL) -> list[OracleResult]:
    """Oracle comparison at every level ``1 .. k_max``."""
    if f.degree ** k_max > MAX_FIBER:
        raise OracleTooLarge(f"d^k = {f.degree ** k_max} exceeds {MAX_FIBER}")
    chain = deck_chain(f, k_max, tol)
    return [verify_level(f, k, tol, chain[k]) for k in range(1, k_max + 1)]
