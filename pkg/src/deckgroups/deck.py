"""Deck groups of iterates of bicritical maps.

``Deck(f^k)`` is the group of Moebius maps ``phi`` with ``f^k o phi = f^k``.
It is built level by level: every element of ``Deck(f^(k+1))`` is a lift of
an element ``mu`` of ``Deck(f^k)`` that preserves the critical values, i.e. a
solution of ``f o phi = mu o f``, and every such ``mu`` has exactly ``d``
lifts forming one coset of ``Deck(f)``. So

    Deck(f^(k+1)) = union of lift(f, mu) over mu in Deck(f^k) with mu(V_f) = V_f

starting from ``Deck(f^0) = {id}``. Once two consecutive levels agree the
chain is constant, and for maps that are not power maps it is constant from
level 3 on. Power maps are handled in closed form: ``Deck(f^k)`` is the
rotation group of order ``d^k`` about the critical points.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import bicritical as bc
from . import sphere
from .errors import (
    DegenerateMapWarning, GroupTooLarge, LiftVerificationFailed, NotAGroup,
    PowerMapInput, ProjectionVerificationFailed, ValueSetNotPreserved,
    VerificationFailed,
)
from .groups import GroupType, MatrixIndex, certify, dedupe
from .sphere import DEFAULT_TOL, IDENTITY, MoebiusMap, Tolerance

# rng salts, one per sampling purpose so that draws never correlate
_SALT_LIFT = 101
_SALT_PROJECT = 202
_SALT_PROJECT_CHECK = 203
_SALT_DECK = 303


@dataclass(frozen=True, eq=False)
class DeckGroup:
    """``Deck(f^k)`` together with its isomorphism type.

    ``new_elements`` are the elements of ``Deck(f^k)`` not already in
    ``Deck(f^(k-1))``.
    """

    elements: tuple[MoebiusMap, ...]
    k: int
    group_type: GroupType | None = None
    generators: tuple[MoebiusMap, ...] = ()
    new_elements: tuple[MoebiusMap, ...] = ()
    degenerate: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True, eq=False)
class DeckChain:
    """The nested chain ``Deck(f) <= Deck(f^2) <= ... <= Deck(f^k_max)``."""

    f: bc.BicriticalMap
    groups: tuple[DeckGroup, ...]
    power_map_flag: bool
    stabilized_at: int | None = None
    degenerate: bool = False

    def __getitem__(self, k: int) -> DeckGroup:
        """The group at level ``k`` (1-based, like the iterate)."""
        if not 1 <= k <= len(self.groups):
            raise IndexError(f"level {k} outside 1..{len(self.groups)}")
        return self.groups[k - 1]

    @property
    def k_max(self) -> int:
        return len(self.groups)

    @property
    def orders(self) -> list[int]:
        return [g.order for g in self.groups]


# ---------------------------------------------------------------------------
# sampling and verification helpers
# ---------------------------------------------------------------------------


def regular_points(f: bc.BicriticalMap, k: int, n: int, rng: np.random.Generator,
                   margin: float) -> tuple[np.ndarray, np.ndarray]:
    """``n`` random points whose first ``k`` iterates stay ``margin`` away from ``C_f``."""
    cz, cw = sphere.points_to_arrays(bc.critical_points(f))
    zs, ws = [], []
    have = 0
    while have < n:
        z, w = sphere.random_points(rng, 4 * n)
        ok = np.ones(len(z), dtype=bool)
        oz, ow = z, w
        for _ in range(k):
            for c_z, c_w in zip(cz, cw):
                ok &= sphere.chordal_arrays(oz, ow, c_z, c_w) > margin
            oz, ow = f.eval_arrays(oz, ow)
        zs.append(z[ok])
        ws.append(w[ok])
        have += int(ok.sum())
    return np.concatenate(zs)[:n], np.concatenate(ws)[:n]


def deck_identity_defect(f: bc.BicriticalMap, k: int, maps: Sequence[MoebiusMap],
                         tol: Tolerance = DEFAULT_TOL, salt: int = _SALT_DECK) -> np.ndarray:
    """Worst ``chordal(f^k(phi(p)), f^k(p))`` over sample points, per map."""
    if not maps:
        return np.zeros(0)
    z, w = regular_points(f, k, tol.n_samples, tol.rng(salt), 100 * tol.eps)
    tz, tw = f.iterate_arrays(k, z, w)
    mats = sphere.as_matrix_array(maps)
    pz, pw = sphere.apply_matrix_array(mats, z, w)
    shape = pz.shape
    qz, qw = f.iterate_arrays(k, pz.ravel(), pw.ravel())
    dev = sphere.chordal_arrays(qz.reshape(shape), qw.reshape(shape), tz[None, :], tw[None, :])
    return dev.max(axis=1)


def semiconjugacy_defect(f: bc.BicriticalMap, phi: MoebiusMap, mu: MoebiusMap,
                         z: np.ndarray, w: np.ndarray) -> float:
    """Worst ``chordal(f(phi(p)), mu(f(p)))`` over the given points."""
    lz, lw = f.eval_arrays(*sphere.apply_arrays(phi, z, w))
    rz, rw = sphere.apply_arrays(mu, *f.eval_arrays(z, w))
    return float(sphere.chordal_arrays(lz, lw, rz, rw).max())


# ---------------------------------------------------------------------------
# level one, lifting and projecting
# ---------------------------------------------------------------------------


def base_rotations(f: bc.BicriticalMap) -> list[MoebiusMap]:
    """``pre^-1 o (z -> zeta z) o pre`` for the ``d``-th roots of unity ``zeta``."""
    return [sphere.conjugate(sphere.rotation(f.degree, j), f.pre) for j in range(f.degree)]


def base_deck(f: bc.BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> DeckGroup:
    elements = base_rotations(f)
    _verify_level(f, 1, elements, tol)
    return DeckGroup(tuple(elements), 1, GroupType.cyclic(f.degree), (elements[1 % f.degree],),
                     tuple(elements[1:]))


def value_preserving_subset(elements: Sequence[MoebiusMap], values: bc.PointPair,
                            tol: Tolerance = DEFAULT_TOL) -> list[MoebiusMap]:
    """Elements ``mu`` with ``mu(values) = values`` as a set."""
    return [m for m in elements if values.image(m).isclose(values, tol.eps)]


def lift(f: bc.BicriticalMap, mu: MoebiusMap, tol: Tolerance = DEFAULT_TOL) -> list[MoebiusMap]:
    """All ``d`` Moebius maps ``phi`` with ``f o phi = mu o f``.

    Requires ``mu`` to preserve the critical values. In the coordinates where
    ``f`` is ``z -> z^d`` the conjugate of ``mu`` is ``z -> a z`` or
    ``z -> a / z``; its lifts are ``z -> c z`` (resp. ``c / z``) for the ``d``
    solutions of ``c^d = a``.
    """
    values = bc.critical_values(f)
    if not values.image(mu).isclose(values, tol.eps):
        raise ValueSetNotPreserved(f"{mu!r} does not preserve the critical values")
    m = sphere.conjugate(mu, f.post)  # post^-1 o mu o post
    a, b, c, d = m.entries
    if max(abs(b), abs(c)) < max(abs(a), abs(d)):
        ratio, swap = a / d, False
    else:
        ratio, swap = b / c, True
    n = f.degree
    root = abs(ratio) ** (1.0 / n) * cmath.exp(1j * cmath.phase(ratio) / n)
    lifts = []
    for j in range(n):
        cj = root * cmath.exp(2j * math.pi * j / n)
        core = MoebiusMap(0, cj, 1, 0) if swap else MoebiusMap(cj, 0, 0, 1)
        lifts.append(sphere.conjugate(core, f.pre))
    z, w = sphere.random_points(tol.rng(_SALT_LIFT), tol.n_samples)
    for phi in lifts:
        defect = semiconjugacy_defect(f, phi, mu, z, w)
        if not defect < 10 * tol.eps:
            raise LiftVerificationFailed(f"lift of {mu!r} misses f o phi = mu o f by {defect:.3e}")
    return lifts


def project(f: bc.BicriticalMap, phi: MoebiusMap, k: int = 2,
            tol: Tolerance = DEFAULT_TOL) -> MoebiusMap:
    """The unique ``mu`` with ``f o phi = mu o f``, for ``phi`` in ``Deck(f^k)``.

    ``mu`` is reconstructed from three well separated sample points, then
    checked on fresh samples; for ``k >= 2`` it is also checked to lie in
    ``Deck(f^(k-1))``.
    """
    rng = tol.rng(_SALT_PROJECT)
    crit = bc.critical_points(f)
    src, dst = [], []
    for _ in range(1000):
        z, w = sphere.random_points(rng, 1)
        p = sphere.SpherePoint(complex(z[0]), complex(w[0]))
        if min(sphere.chordal_distance(p, c) for c in crit) < 0.05:
            continue
        fp = bc.evaluate(f, p)
        if any(sphere.chordal_distance(fp, q) < 0.05 for q in src):
            continue
        src.append(fp)
        dst.append(bc.evaluate(f, sphere.apply(phi, p)))
        if len(src) == 3:
            break
    else:
        raise ProjectionVerificationFailed("could not find three well separated regular points")
    try:
        mu = sphere.mobius_from_three_points(src, dst, tol.eps)
    except sphere.DegenerateTriple as exc:
        raise ProjectionVerificationFailed(f"{phi!r} does not descend: {exc}") from exc
    z, w = sphere.random_points(tol.rng(_SALT_PROJECT_CHECK), tol.n_samples)
    defect = semiconjugacy_defect(f, phi, mu, z, w)
    if not defect < 10 * tol.eps:
        raise ProjectionVerificationFailed(f"f o phi = mu o f fails by {defect:.3e}")
    if k >= 2:
        level_defect = deck_identity_defect(f, k - 1, [mu], tol)[0]
        if not level_defect < 10 * tol.eps:
            raise ProjectionVerificationFailed(
                f"projection is not in Deck(f^{k - 1}) (defect {level_defect:.3e})")
    return mu


def gamma_group(f: bc.BicriticalMap, tol: Tolerance = DEFAULT_TOL) -> list[MoebiusMap]:
    """Moebius maps preserving both ``C_f`` and ``V_f`` setwise (at most four).

    With ``C_f = {c1, c2}`` and ``V_f = {v1, v2}`` all distinct the candidates
    are the identity, ``mu1`` (fixes each ``c``, swaps the ``v``), ``mu2``
    (fixes each ``v``, swaps the ``c``) and ``mu3`` (swaps both). Each is
    pinned down by three of the four points and kept if it also sends the
    fourth point where required. If one of the points is shared the group is
    trivial; power maps have infinitely many such symmetries.
    """
    size = bc.critical_union_size(f, tol)
    if size == 2:
        raise PowerMapInput("C_f = V_f: the group of maps preserving both pairs is infinite")
    if size == 3:
        return [IDENTITY]
    (c1, c2), (v1, v2) = bc.critical_points(f), bc.critical_values(f)
    candidates = [
        ((c1, c2, v1), (c1, c2, v2), v2, v1),
        ((v1, v2, c1), (v1, v2, c2), c2, c1),
        ((c1, c2, v1), (c2, c1, v2), v2, v1),
    ]
    out = [IDENTITY]
    for src, dst, fourth, target in candidates:
        mu = sphere.mobius_from_three_points(src, dst, tol.eps)
        if (sphere.chordal_distance(sphere.apply(mu, fourth), target) < 10 * tol.eps
                and sphere.compose(mu, mu).is_identity(10 * tol.eps)):
            out.append(mu)
    return out


# ---------------------------------------------------------------------------
# full construction
# ---------------------------------------------------------------------------


def _verify_level(f: bc.BicriticalMap, k: int, elements: Sequence[MoebiusMap],
                  tol: Tolerance) -> None:
    defect = deck_identity_defect(f, k, elements, tol)
    bad = np.flatnonzero(~(defect < 10 * tol.eps))
    if len(bad):
        raise VerificationFailed(
            f"{len(bad)} element(s) fail f^{k} o phi = f^{k}; worst defect {defect.max():.3e}")


def _make_group(f, k, elements, previous, tol, degenerate, check_closure=True) -> DeckGroup:
    try:
        gtype, gens = certify(elements, tol, check=check_closure)
    except NotAGroup as exc:
        raise VerificationFailed(f"level {k}: {exc}") from exc
    if previous is None:
        new = tuple(elements)
    else:
        found = MatrixIndex(previous, tol.eps).find(sphere.as_matrix_array(elements))
        new = tuple(e for e, i in zip(elements, found) if i < 0)
    return DeckGroup(tuple(elements), k, gtype, tuple(gens), new, degenerate)


def _power_level(f: bc.BicriticalMap, k: int) -> list[MoebiusMap]:
    n = f.degree ** k
    return [sphere.conjugate(sphere.rotation(n, j), f.pre) for j in range(n)]


def deck_chain(f: bc.BicriticalMap, k_max: int, tol: Tolerance = DEFAULT_TOL,
               use_deck3_bound: bool = True, verify: bool = True) -> DeckChain:
    """``Deck(f^k)`` for ``k = 1 .. k_max``.

    Levels past the first repetition are copied rather than recomputed, and
    with ``use_deck3_bound`` so are levels past 3 for maps that are not power
    maps. Set it to False to compute every level up to ``k_max`` through the
    lifting recursion. With ``verify`` every element is checked against the
    defining identity and every level for closure.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    degenerate = bc.is_near_power_map(f, tol)
    if degenerate:
        warnings.warn(
            f"map is within {bc.power_map_gap(f):.2e} of a power map; classification is fragile",
            DegenerateMapWarning, stacklevel=2)

    if bc.is_power_map(f, tol):
        if f.degree ** k_max > tol.max_order:
            raise GroupTooLarge(
                f"power map: Deck(f^{k_max}) has {f.degree ** k_max} elements "
                f"(cap {tol.max_order})")
        groups, previous = [], None
        for k in range(1, k_max + 1):
            elements = _power_level(f, k)
            if verify:
                _verify_level(f, k, elements, tol)
            # the rotation group is closed by construction
            groups.append(_make_group(f, k, elements, previous, tol, degenerate,
                                      check_closure=verify and len(elements) <= 512))
            previous = elements
        return DeckChain(f, tuple(groups), True, None, degenerate)

    values = bc.critical_values(f)
    groups: list[DeckGroup] = []
    previous: list[MoebiusMap] = [IDENTITY]
    stabilized_at = None
    for k in range(1, k_max + 1):
        reuse = stabilized_at is not None or (use_deck3_bound and k > 3)
        if reuse:
            last = groups[-1]
            groups.append(DeckGroup(last.elements, k, last.group_type, last.generators,
                                    (), degenerate))
            if stabilized_at is None:
                stabilized_at = 3
            continue
        candidates = []
        for mu in value_preserving_subset(previous, values, tol):
            candidates.extend(lift(f, mu, tol))
        current = dedupe(candidates, tol.eps)
        if verify:
            _verify_level(f, k, current, tol)
        group = _make_group(f, k, current, previous if k > 1 else None, tol, degenerate,
                            check_closure=verify)
        if k > 1 and len(current) == len(previous):
            stabilized_at = k - 1
            group = DeckGroup(group.elements, k, group.group_type, group.generators, (), degenerate)
        groups.append(group)
        previous = current
    return DeckChain(f, tuple(groups), False, stabilized_at, degenerate)


def deck_group(f: bc.BicriticalMap, k: int, tol: Tolerance = DEFAULT_TOL,
               use_deck3_bound: bool = True) -> DeckGroup:
    """``Deck(f^k)``."""
    return deck_chain(f, k, tol, use_deck3_bound)[k]
